"""Canonical products of q-Pochhammer symbols in one spectral variable x.

A QProduct is

    coef * x^s * prod (q^a x^d; q^p)_inf^e * prod (1 - q^c x)^f * prod (q^a; q^p)_inf^h

with d = +-1 and every infinite factor normalised to 0 < a <= p.  Finite
factors of the form (1 - q^c / x) are rewritten as -q^c x^-1 (1 - q^-c x),
so the representation of a given meromorphic function is unique and
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import MRat, QRat, Scalar, FracMonomial, Phase, as_fraction, mq
from .series import TruncSeries

__all__ = ["QProduct"]


def _bump(d: dict, k, e):
    v = d.get(k, 0) + e
    if v:
        d[k] = v
    else:
        d.pop(k, None)


class QProduct:
    __slots__ = ("coef", "xpow", "inf", "fin", "const")

    def __init__(self, coef=None, xpow=0, inf=None, fin=None, const=None):
        self.coef = coef if isinstance(coef, Scalar) else Scalar(0, QRat(1) if coef is None else coef)
        self.xpow = as_fraction(xpow)
        self.inf = dict(inf or {})
        self.fin = dict(fin or {})
        self.const = dict(const or {})

    # -- constructors -------------------------------------------------------
    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def scalar(cls, s):
        return cls(coef=s if isinstance(s, Scalar) else Scalar(0, QRat.coerce(s)))

    @classmethod
    def monomial(cls, xpow):
        return cls(xpow=xpow)

    @classmethod
    def linear(cls, c: int, d: int = 1, e: int = 1):
        """(1 - q^c x^d)^e."""
        out = cls()
        out._add_fin(c, d, e)
        return out

    @classmethod
    def poch(cls, a: int, p: int, d: int = 1, e: int = 1):
        """(q^a x^d; q^p)_inf^e."""
        if p <= 0:
            raise ValueError("p must be positive")
        out = cls()
        out._add_inf(a, p, d, e)
        return out

    @classmethod
    def const_poch(cls, a: int, p: int, e: int = 1):
        """(q^a; q^p)_inf^e, independent of x."""
        out = cls()
        out._add_const(a, p, e)
        return out

    def copy(self):
        return QProduct(self.coef, self.xpow, self.inf, self.fin, self.const)

    # -- normalisation --------------------------------------------------------
    def _add_fin(self, c: int, d: int, e: int):
        if d == 1:
            _bump(self.fin, c, e)
        else:
            # (1 - q^c/x) = -q^c x^-1 (1 - q^-c x)
            self.coef = self.coef * Scalar(Phase(e), QRat.q(c * e))
            self.xpow -= e
            _bump(self.fin, -c, e)

    def _add_inf(self, a: int, p: int, d: int, e: int):
        while a <= 0:
            self._add_fin(a, d, e)
            a += p
        while a > p:
            a -= p
            self._add_fin(a, d, -e)
        _bump(self.inf, (a, p, d), e)

    def _add_const(self, a: int, p: int, e: int):
        while a <= 0:
            if a == 0:
                if e > 0:
                    raise ZeroDivisionError("(1;q^p) vanishes")
                raise ZeroDivisionError("pole from (1;q^p)")
            self.coef = self.coef * Scalar(0, (1 - QRat.q(a)) ** e)
            a += p
        while a > p:
            a -= p
            self.coef = self.coef * Scalar(0, (1 - QRat.q(a)) ** (-e))
        _bump(self.const, (a, p), e)

    # -- algebra --------------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, QProduct):
            other = QProduct.scalar(other)
        out = self.copy()
        out.coef = out.coef * other.coef
        out.xpow += other.xpow
        for k, e in other.inf.items():
            _bump(out.inf, k, e)
        for k, e in other.fin.items():
            _bump(out.fin, k, e)
        for k, e in other.const.items():
            _bump(out.const, k, e)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QProduct(self.coef ** n, self.xpow * n)
        out.inf = {k: e * n for k, e in self.inf.items() if e * n}
        out.fin = {k: e * n for k, e in self.fin.items() if e * n}
        out.const = {k: e * n for k, e in self.const.items() if e * n}
        return out

    def inv(self):
        return self ** -1

    def __truediv__(self, other):
        if not isinstance(other, QProduct):
            other = QProduct.scalar(other)
        return self * other.inv()

    def __neg__(self):
        return self * QProduct.scalar(Scalar(1))

    def shift(self, k: int):
        """x -> q^k x."""
        out = QProduct(self.coef * Scalar(0, 1, {"q": self.xpow * k}), self.xpow)
        out.const = dict(self.const)
        for (a, p, d), e in self.inf.items():
            out._add_inf(a + d * k, p, d, e)
        for c, e in self.fin.items():
            out._add_fin(c + k, 1, e)
        return out

    def invert(self):
        """x -> 1/x."""
        out = QProduct(self.coef, -self.xpow)
        out.const = dict(self.const)
        for (a, p, d), e in self.inf.items():
            out._add_inf(a, p, -d, e)
        for c, e in self.fin.items():
            out._add_fin(c, -1, e)
        return out

    def __eq__(self, other):
        if not isinstance(other, QProduct):
            return NotImplemented
        return (self.coef == other.coef and self.xpow == other.xpow
                and self.inf == other.inf and self.fin == other.fin
                and self.const == other.const)

    def __hash__(self):
        return hash((self.coef, self.xpow, tuple(sorted(self.inf.items())),
                     tuple(sorted(self.fin.items())), tuple(sorted(self.const.items()))))

    # -- evaluation -----------------------------------------------------------
    def at_one(self):
        """Specialise x = 1; returns an x-free QProduct (or raises on a pole)."""
        out = QProduct(self.coef)
        out.const = dict(self.const)
        for (a, p, d), e in self.inf.items():
            out._add_const(a, p, e)
        for c, e in self.fin.items():
            if c == 0:
                raise ZeroDivisionError("zero or pole at x=1") if e < 0 else ValueError("vanishes at x=1")
            out.coef = out.coef * Scalar(0, (1 - QRat.q(c)) ** e)
        return out

    def is_rational(self) -> bool:
        return not self.inf and not self.const

    def to_mrat(self, name: str = "z") -> MRat:
        """Convert a product without infinite factors; x becomes the variable `name`."""
        if not self.is_rational():
            raise ValueError("infinite factors present")
        if self.xpow.denominator != 1 or not self.coef.zpart.is_integral():
            raise ValueError("fractional powers present")
        if self.coef.phase.sign() is None:
            raise ValueError("non-real phase")
        out = MRat.coerce(self.coef.qpart) * self.coef.phase.sign() * self.coef.zpart.to_mrat()
        out = out * MRat.monomial(1, **{name: int(self.xpow)})
        x = MRat.var(name)
        for c, e in self.fin.items():
            out = out * (1 - mq(c) * x) ** e
        return out

    def qseries(self, K: int, name: str = "z"):
        """Expand in q through q^K.

        Returns (phase, fractional monomial, {n: MRat}) where the dict holds
        the coefficient of q^n (n <= K) as a Laurent polynomial/rational
        function in `name`.  Fractional q and x powers stay in the monomial.
        """
        x = MRat.var(name)
        xi = MRat.monomial(1, **{name: -1})
        frac = FracMonomial({k: v for k, v in self.coef.zpart.exps.items()}) * FracMonomial({name: self.xpow})
        # collect factors as (q-shift, series in q with MRat coefficients)
        shift = 0
        factors = []  # (list of (qexp, MRat) sparse polynomial in q, exponent)
        qp = self.coef.qpart
        shift += qp.shift
        factors.append(("qrat", qp, 1))
        for (a, p, d), e in self.inf.items():
            factors.append(("inf", (a, p, x if d == 1 else xi), e))
        for c, e in self.fin.items():
            if c >= 0:
                factors.append(("lin", (c, x), e))
            else:
                # (1 - q^c x) = -q^c x (1 - q^-c / x)
                shift += c * e
                factors.append(("mono", ((-x) ** e,), 0))
                factors.append(("lin", (-c, xi), e))
        for (a, p), e in self.const.items():
            factors.append(("inf", (a, p, MRat(1)), e))
        top = K - shift
        if top < 0:
            return self.coef.phase, frac, {}
        total = TruncSeries([MRat(1)], top, "q", zero=MRat(0))
        for kind, data, e in factors:
            if kind == "qrat":
                num = _poly_series([(i, MRat(c)) for i, c in enumerate(data.num.coeffs()) if c != 0], top)
                den = _poly_series([(i, MRat(c)) for i, c in enumerate(data.den.coeffs()) if c != 0], top)
                total = total * num * den.inv()
            elif kind == "mono":
                total = total.scale(data[0])
            else:
                if kind == "inf":
                    a, p, xv = data
                    s = _poly_series([(0, MRat(1))], top)
                    k = a
                    while k <= top:
                        s = s * _poly_series([(0, MRat(1)), (k, -xv)], top)
                        k += p
                else:
                    c, xv = data
                    s = _poly_series([(0, MRat(1)), (c, -xv)], top)
                if e > 0:
                    for _ in range(e):
                        total = total * s
                else:
                    si = s.inv()
                    for _ in range(-e):
                        total = total * si
        out = {}
        for i, cf in enumerate(total.coeffs):
            if not cf.is_zero():
                out[i + shift] = cf
        return self.coef.phase, frac, out

    def evalf(self, qval, xval=1.0, terms: int = 200):
        """Floating evaluation (mpmath) at numeric q and x; fractional powers use principal branches."""
        import mpmath
        qv = mpmath.mpf(qval) if not isinstance(qval, Fraction) else mpmath.mpf(qval.numerator) / qval.denominator
        xv = mpmath.mpmathify(xval)
        val = mpmath.mpc(self.coef.phase.to_complex()) * mpmath.mpf(self.coef.qpart.evalf(float(qv)))
        for k, e in self.coef.zpart.exps.items():
            if k == "q":
                val *= qv ** (mpmath.mpf(e.numerator) / e.denominator)
        val *= xv ** (mpmath.mpf(self.xpow.numerator) / self.xpow.denominator)
        for (a, p, d), e in self.inf.items():
            val *= mpmath.qp(qv ** a * xv ** d, qv ** p) ** e
        for c, e in self.fin.items():
            val *= (1 - qv ** c * xv) ** e
        for (a, p), e in self.const.items():
            val *= mpmath.qp(qv ** a, qv ** p) ** e
        return val

    def __repr__(self):
        parts = [repr(self.coef)]
        if self.xpow:
            parts.append("x^(%s)" % self.xpow)
        for (a, p, d), e in sorted(self.inf.items()):
            parts.append("(q^%d x^%d; q^%d)^%d" % (a, d, p, e))
        for c, e in sorted(self.fin.items()):
            parts.append("(1-q^%d x)^%d" % (c, e))
        for (a, p), e in sorted(self.const.items()):
            parts.append("(q^%d; q^%d)^%d" % (a, p, e))
        return " * ".join(parts)


def _poly_series(terms, top):
    cs = [MRat(0)] * (top + 1)
    for i, c in terms:
        if i <= top:
            cs[i] = cs[i] + c
    return TruncSeries(cs, top, "q", zero=MRat(0))
