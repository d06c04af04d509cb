"""Truncated power series in one variable with exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from .exact import QRat, qrat_dot

__all__ = ["TruncSeries", "pochhammer_series", "pochhammer_log_coeff", "q_pochhammer_finite"]


class TruncSeries:
    """c_0 + c_1 x + ... + c_K x^K + O(x^(K+1)).

    Coefficients live in any exact field whose elements support + - * and
    multiplication by Fractions (QRat, MRat, Fraction).
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order: int, var: str = "x", zero=None):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(coeffs)[: order + 1]
        if zero is None:
            zero = cs[0] * 0 if cs else QRat(0)
        cs += [zero] * (order + 1 - len(cs))
        self.coeffs, self.order, self.var = cs, order, var

    @property
    def zero(self):
        return self.coeffs[0] * 0

    @classmethod
    def one(cls, order: int, unit=None, var: str = "x"):
        unit = QRat(1) if unit is None else unit
        return cls([unit], order, var, zero=unit * 0)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected TruncSeries")
        if other.order != self.order or other.var != self.var:
            raise ValueError("order/variable mismatch")

    def __add__(self, other):
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    def __sub__(self, other):
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order, self.var)

    def scale(self, c):
        return TruncSeries([a * c for a in self.coeffs], self.order, self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        K = self.order
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(K + 1) if not _is_zero(a[i])]
        nz_b = [j for j in range(K + 1) if not _is_zero(b[j])]
        if isinstance(a[0], QRat) and isinstance(b[0], QRat):
            sb = set(nz_b)
            out = [qrat_dot((a[i], b[n - i]) for i in nz_a if i <= n and n - i in sb)
                   for n in range(K + 1)]
            return TruncSeries(out, K, self.var)
        out = [self.zero] * (K + 1)
        for i in nz_a:
            for j in nz_b:
                if i + j > K:
                    break
                out[i + j] = out[i + j] + a[i] * b[j]
        return TruncSeries(out, K, self.var)

    def inv(self):
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ZeroDivisionError("constant term vanishes")
        K = self.order
        i0 = 1 / c0 if not hasattr(c0, "inv") else c0.inv()
        out = [i0]
        fast = isinstance(c0, QRat)
        for n in range(1, K + 1):
            if fast:
                s = qrat_dot((self.coeffs[k], out[n - k]) for k in range(1, n + 1))
            else:
                s = self.zero
                for k in range(1, n + 1):
                    if not _is_zero(self.coeffs[k]):
                        s = s + self.coeffs[k] * out[n - k]
            out.append(-(s * i0))
        return TruncSeries(out, K, self.var)

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(1 / other if not hasattr(other, "inv") else other.inv())
        return self * other.inv()

    def derivative_x(self):
        """x d/dx, keeping the order."""
        return TruncSeries([c * n for n, c in enumerate(self.coeffs)], self.order, self.var)

    def exp(self):
        """exp(s) for s with vanishing constant term."""
        if not _is_zero(self.coeffs[0]):
            raise ValueError("exp needs c_0 = 0")
        K = self.order
        one = self.zero + 1
        e = [one]
        # n e_n = sum_{k=1}^n k s_k e_{n-k}
        fast = isinstance(one, QRat)
        for n in range(1, K + 1):
            if fast:
                s = qrat_dot((self.coeffs[k] * k, e[n - k]) for k in range(1, n + 1))
            else:
                s = self.zero
                for k in range(1, n + 1):
                    if not _is_zero(self.coeffs[k]):
                        s = s + self.coeffs[k] * e[n - k] * k
            e.append(s * Fraction(1, n))
        return TruncSeries(e, K, self.var)

    def log(self):
        """log(s) for s with constant term 1."""
        if self.coeffs[0] != self.zero + 1:
            raise ValueError("log needs c_0 = 1")
        K = self.order
        a = self.coeffs
        out = [self.zero]
        # n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        for n in range(1, K + 1):
            s = a[n] * n
            for k in range(1, n):
                if not _is_zero(a[n - k]) and not _is_zero(out[k]):
                    s = s - out[k] * a[n - k] * k
            out.append(s * Fraction(1, n))
        return TruncSeries(out, K, self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.order == other.order and self.var == other.var
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def first_mismatch(self, other):
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n
        return None

    def __repr__(self):
        terms = ["(%r)*%s^%d" % (c, self.var, n) for n, c in enumerate(self.coeffs) if not _is_zero(c)]
        return " + ".join(terms or ["0"]) + " + O(%s^%d)" % (self.var, self.order + 1)


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def q_pochhammer_finite(a: int, p: int, n: int) -> QRat:
    """(q^a; q^p)_n as an exact QRat."""
    out = QRat(1)
    for k in range(n):
        out = out * (1 - QRat.q(a + k * p))
    return out


def pochhammer_series(a_qpow: int, p_qpow: int, K: int, var: str = "x") -> TruncSeries:
    """(q^a x; q^p)_inf as a series in x through x^K, coefficients exact in q.

    Uses Euler's expansion sum_m (-1)^m q^(p m(m-1)/2 + a m) x^m / (q^p; q^p)_m.
    """
    if p_qpow <= 0:
        raise ValueError("p_qpow must be positive")
    if K < 0:
        raise ValueError("K must be >= 0")
    cs = []
    for m in range(K + 1):
        c = QRat.q(p_qpow * m * (m - 1) // 2 + a_qpow * m) / q_pochhammer_finite(p_qpow, p_qpow, m)
        cs.append(-c if m % 2 else c)
    return TruncSeries(cs, K, var)


def pochhammer_log_coeff(a_qpow: int, p_qpow: int, m: int) -> QRat:
    """x^m coefficient of log (q^a x; q^p)_inf: -q^(am)/(m(1-q^(pm)))."""
    return -QRat.q(a_qpow * m) / (m * (1 - QRat.q(p_qpow * m)))
