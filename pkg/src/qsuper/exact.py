"""Exact scalar types.

QRat      rational functions of q (Laurent numerator/denominator over Q)
MRat      rational functions in the named spectral variables (and q)
Phase     unimodular scalars exp(i*pi*r), r rational mod 2
FracMonomial, Scalar   fractional monomials and composite prefactors

Polynomial arithmetic is delegated to FLINT (python-flint).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

import flint

__all__ = [
    "QRat", "MRat", "Phase", "FracMonomial", "Scalar", "qint", "VARS",
    "var", "mq", "as_fraction",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    return Fraction(x)


def _fmpq(x) -> flint.fmpq:
    x = as_fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


# --------------------------------------------------------------------------
# QRat
# --------------------------------------------------------------------------

_P0 = flint.fmpq_poly([0])
_P1 = flint.fmpq_poly([1])


def _strip_q(p: flint.fmpq_poly) -> tuple[flint.fmpq_poly, int]:
    """Split p = q^k * p' with p'(0) != 0."""
    c = p.coeffs()
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    if k == 0:
        return p, 0
    return flint.fmpq_poly(c[k:]), k


class QRat:
    """q^shift * num(q) / den(q) in canonical form.

    num(0) != 0, den(0) != 0, gcd(num, den) = 1, den monic.  Zero is (0, 1, 0).
    """

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=0, den=1, shift: int = 0, _canon: bool = False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([_fmpq(num)])
        if not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly([_fmpq(den)])
        if not _canon:
            if den.is_zero():
                raise ZeroDivisionError("QRat with zero denominator")
            if num.is_zero():
                num, den, shift = _P0, _P1, 0
            else:
                num, a = _strip_q(num)
                den, b = _strip_q(den)
                shift += a - b
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num / g
                    den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num, self.den, self.shift = num, den, shift
        self._hash = None

    # constructors
    @classmethod
    def q(cls, k: int = 1) -> "QRat":
        return cls(1, 1, k)

    @classmethod
    def from_coeffs(cls, coeffs, low: int = 0) -> "QRat":
        """Laurent polynomial sum_i coeffs[i] q^(low+i)."""
        return cls(flint.fmpq_poly([_fmpq(c) for c in coeffs]), 1, low)

    @classmethod
    def coerce(cls, x) -> "QRat":
        if isinstance(x, QRat):
            return x
        return cls(x)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.degree() == 0

    def is_monomial(self) -> bool:
        return self.num.degree() == 0 and self.den.degree() == 0

    def laurent_coeffs(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        return {self.shift + i: as_fraction(c) for i, c in enumerate(self.num.coeffs()) if c != 0}

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, QRat):
            if isinstance(other, MRat):
                return NotImplemented
            other = QRat(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = min(self.shift, other.shift)
        qs = flint.fmpq_poly([0, 1])
        a = self.num if self.shift == s else self.num * qs ** (self.shift - s)
        b = other.num if other.shift == s else other.num * qs ** (other.shift - s)
        if self.den == other.den:
            return QRat(a + b, self.den, s)
        return QRat(a * other.den + b * self.den, self.den * other.den, s)

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den, self.shift, _canon=True)

    def __sub__(self, other):
        if not isinstance(other, QRat):
            if isinstance(other, MRat):
                return NotImplemented
            other = QRat(other)
        return self + (-other)

    def __rsub__(self, other):
        return QRat(other) - self

    def __mul__(self, other):
        if not isinstance(other, QRat):
            if isinstance(other, MRat):
                return NotImplemented
            other = QRat(other)
        if self.is_zero() or other.is_zero():
            return QRat()
        return QRat(self.num * other.num, self.den * other.den, self.shift + other.shift)

    __rmul__ = __mul__

    def inv(self) -> "QRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QRat")
        return QRat(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        if not isinstance(other, QRat):
            if isinstance(other, MRat):
                return NotImplemented
            other = QRat(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return QRat(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return QRat(1)
        return QRat(self.num ** n, self.den ** n, self.shift * n, _canon=True)

    def __eq__(self, other):
        if not isinstance(other, QRat):
            if isinstance(other, (int, Fraction)):
                other = QRat(other)
            else:
                return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # evaluation and conversion
    def __call__(self, qval):
        qv = as_fraction(qval)
        x = _fmpq(qv)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at q=%s" % qv)
        return as_fraction(self.num(x) / d) * qv ** self.shift

    def evalf(self, qval: float) -> float:
        n = sum(float(c) * qval ** i for i, c in enumerate(self.num.coeffs()))
        d = sum(float(c) * qval ** i for i, c in enumerate(self.den.coeffs()))
        return n / d * qval ** self.shift

    def subs_qpow(self, k: int) -> "QRat":
        """q -> q^k (k may be negative)."""
        def sub(p):
            c = p.coeffs()
            if k > 0:
                return flint.fmpq_poly([c[i // k] if i % k == 0 else 0 for i in range(k * (len(c) - 1) + 1)]), 0
            m = -k
            deg = len(c) - 1
            out = [0] * (m * deg + 1)
            for i, ci in enumerate(c):
                out[m * (deg - i)] = ci
            return flint.fmpq_poly(out), -m * deg
        if self.is_zero():
            return self
        if k == 0:
            return QRat(self(1))
        n, sn = sub(self.num)
        d, sd = sub(self.den)
        return QRat(n, d, self.shift * k + sn - sd)

    def series(self, order: int, start: int | None = None) -> dict[int, Fraction]:
        """Power-series coefficients in q up to and including q^order."""
        d = [as_fraction(c) for c in self.den.coeffs()]
        n = [as_fraction(c) for c in self.num.coeffs()]
        out = {}
        top = order - self.shift
        inv0 = 1 / d[0]
        coeffs = []
        for i in range(max(top + 1, 0)):
            s = n[i] if i < len(n) else Fraction(0)
            for j in range(1, min(i, len(d) - 1) + 1):
                s -= d[j] * coeffs[i - j]
            coeffs.append(s * inv0)
        for i, c in enumerate(coeffs):
            if c:
                out[i + self.shift] = c
        return out

    def to_mrat(self) -> "MRat":
        return MRat.from_qrat(self)

    def __repr__(self):
        def ps(p):
            return str(p).replace("x", "q")
        core = ps(self.num) if self.is_laurent() else "(%s)/(%s)" % (ps(self.num), ps(self.den))
        if self.shift:
            return "q^%d*(%s)" % (self.shift, core)
        return core


def _qmono(k: int) -> flint.fmpq_poly:
    return flint.fmpq_poly([0] * k + [1])


def qrat_dot(pairs) -> QRat:
    """sum a_i * b_i over QRats with a single canonicalisation at the end."""
    terms = []
    for a, b in pairs:
        if a.num.is_zero() or b.num.is_zero():
            continue
        terms.append((a.num * b.num, a.den * b.den, a.shift + b.shift))
    if not terms:
        return QRat(0)
    L = terms[0][1]
    for _, d, _ in terms[1:]:
        if d != L:
            L = (L * d) / L.gcd(d)
    s0 = min(t[2] for t in terms)
    num = _P0
    for n, d, s in terms:
        t = n if d == L else n * (L / d)
        if s != s0:
            t = t * _qmono(s - s0)
        num = num + t
    return QRat(num, L, s0)


def qint(n: int) -> QRat:
    """[n]_q = (q^n - q^-n)/(q - q^-1), a Laurent polynomial."""
    if n == 0:
        return QRat(0)
    if n < 0:
        return -qint(-n)
    return QRat.from_coeffs([1 if i % 2 == 0 else 0 for i in range(2 * n - 1)], -(n - 1))


# --------------------------------------------------------------------------
# MRat
# --------------------------------------------------------------------------

VARS = (("q", "Qh", "z", "z1", "z2", "z3", "u", "v", "y")
        + tuple("w%d" % i for i in range(10)) + tuple("w%dp" % i for i in range(10)))
_CTX = flint.fmpq_mpoly_ctx.get(VARS, "lex")
_GENS = dict(zip(VARS, _CTX.gens()))
_IDX = {v: i for i, v in enumerate(VARS)}
_NV = len(VARS)
_ZERO = _CTX.from_dict({})
_ONE = _CTX.from_dict({(0,) * _NV: 1})


def _qrat_poly_parts(x: QRat):
    qv = _GENS["q"]
    def conv(p):
        return _CTX.from_dict({(i,) + (0,) * (_NV - 1): c for i, c in enumerate(p.coeffs()) if c != 0})
    n, d = conv(x.num), conv(x.den)
    if x.shift > 0:
        n = n * qv ** x.shift
    elif x.shift < 0:
        d = d * qv ** (-x.shift)
    return n, d


def _from_laurent_dict(terms: dict) -> tuple:
    """Dict exponent-vector (possibly negative) -> coefficient; return (poly, shiftvec)."""
    if not terms:
        return _ZERO, (0,) * _NV
    low = [min(e[i] for e in terms) for i in range(_NV)]
    low = tuple(min(0, x) for x in low)
    return _CTX.from_dict({tuple(a - b for a, b in zip(e, low)): c for e, c in terms.items() if c != 0}), low


class MRat:
    """num/den over Q in the global variable order VARS, gcd-reduced, den monic (lex)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None, _canon: bool = False):
        if num is None:
            num = _ZERO
        elif not isinstance(num, flint.fmpq_mpoly):
            num = _CTX.from_dict({(0,) * _NV: _fmpq(num)}) if num != 0 else _ZERO
        if den is None:
            den = _ONE
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _CTX.from_dict({(0,) * _NV: _fmpq(den)})
        if not _canon:
            if den.is_zero():
                raise ZeroDivisionError("MRat with zero denominator")
            if num.is_zero():
                num, den = _ZERO, _ONE
            else:
                if not den.is_constant():
                    g = num.gcd(den)
                    if not g.is_constant():
                        num = num / g
                        den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num, self.den = num, den
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "MRat":
        return cls(_GENS[name], _ONE, _canon=True)

    @classmethod
    def from_qrat(cls, x: QRat) -> "MRat":
        n, d = _qrat_poly_parts(x)
        return cls(n, d)

    @classmethod
    def coerce(cls, x) -> "MRat":
        if isinstance(x, MRat):
            return x
        if isinstance(x, QRat):
            return cls.from_qrat(x)
        return cls(x)

    @classmethod
    def monomial(cls, coeff=1, **powers) -> "MRat":
        """coeff * prod var^k with integer (possibly negative) exponents."""
        e = [0] * _NV
        for k, p in powers.items():
            e[_IDX[k]] = p
        n = [max(p, 0) for p in e]
        d = [max(-p, 0) for p in e]
        c = MRat.coerce(coeff)
        return c * cls(_CTX.from_dict({tuple(n): 1}), _CTX.from_dict({tuple(d): 1}), _canon=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def variables(self) -> set:
        out = set()
        for p in (self.num, self.den):
            degs = p.degrees()
            out.update(VARS[i] for i, d in enumerate(degs) if d > 0)
        return out

    def _bin(self, other):
        if isinstance(other, MRat):
            return other
        return MRat.coerce(other)

    def __add__(self, other):
        o = self._bin(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den == o.den:
            return MRat(self.num + o.num, self.den)
        return MRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MRat(-self.num, self.den, _canon=True)

    def __sub__(self, other):
        return self + (-self._bin(other))

    def __rsub__(self, other):
        return self._bin(other) - self

    def __mul__(self, other):
        o = self._bin(other)
        if self.is_zero() or o.is_zero():
            return MRat()
        if self.den.is_constant() and o.den.is_constant():
            return MRat(self.num * o.num, self.den * o.den)
        # cross-cancel before multiplying to keep gcds small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        return MRat((self.num / g1) * (o.num / g2), (self.den / g2) * (o.den / g1))

    __rmul__ = __mul__

    def inv(self) -> "MRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero MRat")
        return MRat(self.den, self.num)

    def __truediv__(self, other):
        return self * self._bin(other).inv()

    def __rtruediv__(self, other):
        return self._bin(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return MRat(self.num ** n, self.den ** n, _canon=True) if n else MRat(1)

    def __eq__(self, other):
        if not isinstance(other, MRat):
            if isinstance(other, (int, Fraction, QRat)):
                other = MRat.coerce(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def cross_equal(self, other) -> bool:
        """Equality by cross-multiplication (independent of the canonical form)."""
        o = self._bin(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    # substitution -----------------------------------------------------------
    def subs_monomial(self, images: dict) -> "MRat":
        """Substitute var -> coeff * prod v^k (Laurent monomial).

        images maps a variable name to (coeff, {var: exponent}); coeff is a
        rational number.  Exponents may be negative, powers of q included.
        """
        if not images:
            return self
        img = []
        for name, (c, powers) in images.items():
            e = [0] * _NV
            for k, p in powers.items():
                e[_IDX[k]] += p
            img.append((_IDX[name], as_fraction(c), e))
        moved = {i for i, _, _ in img}

        def apply(poly):
            out = {}
            for exps, coeff in poly.to_dict().items():
                exps = [int(x) for x in exps]
                new = [0 if i in moved else x for i, x in enumerate(exps)]
                c = as_fraction(coeff)
                for i, ci, e in img:
                    k = exps[i]
                    if k:
                        c *= ci ** k
                        for j in range(_NV):
                            if e[j]:
                                new[j] += e[j] * k
                key = tuple(new)
                out[key] = out.get(key, 0) + c
            return {k: v for k, v in out.items() if v != 0}

        n = apply(self.num)
        d = apply(self.den)
        if not d:
            raise ZeroDivisionError("substitution annihilates the denominator")
        low = tuple(min([0] + [e[i] for e in list(n) + list(d)]) for i in range(_NV))

        def build(terms):
            return _CTX.from_dict({tuple(a - b for a, b in zip(e, low)): _fmpq(c) for e, c in terms.items()})
        nd = build(d)
        if nd.is_zero():
            raise ZeroDivisionError("substitution annihilates the denominator")
        return MRat(build(n), nd)

    def swap(self, a: str, b: str) -> "MRat":
        return self.subs_monomial({a: (1, {b: 1}), b: (1, {a: 1})})

    def rename(self, mapping: dict) -> "MRat":
        return self.subs_monomial({k: (1, {v: 1}) for k, v in mapping.items()})

    def subs_value(self, values: dict) -> "MRat":
        """Substitute exact rational values for some variables."""
        vals = {k: _fmpq(v) for k, v in values.items()}
        n = self.num.subs(vals)
        d = self.den.subs(vals)
        if d.is_zero():
            raise ZeroDivisionError("pole at %r" % (values,))
        return MRat(n, d)

    def __call__(self, **values) -> Fraction:
        r = self.subs_value(values)
        if not r.is_constant():
            raise ValueError("free variables remain: %s" % sorted(r.variables()))
        return as_fraction(r.num.leading_coefficient() if not r.num.is_zero() else 0) / as_fraction(r.den.leading_coefficient())

    def to_qrat(self) -> QRat:
        """Convert an MRat depending on q only."""
        if self.variables() - {"q"}:
            raise ValueError("not a function of q alone")
        def conv(p):
            c = [0] * (p.degrees()[0] + 1)
            for e, v in p.to_dict().items():
                c[e[0]] = v
            return flint.fmpq_poly(c)
        return QRat(conv(self.num), conv(self.den))

    def specialize_qh(self, m: int) -> "MRat":
        """Substitute Qh -> q^(m/2); all resulting q-exponents must be integral."""
        iq, ih = _IDX["q"], _IDX["Qh"]

        def twice(poly):
            out = {}
            for e, c in poly.to_dict().items():
                e = [int(x) for x in e]
                k = 2 * e[iq] + m * e[ih]
                ee = list(e)
                ee[ih] = 0
                ee[iq] = k
                key = tuple(ee)
                out[key] = out.get(key, 0) + as_fraction(c)
            return {k: v for k, v in out.items() if v != 0}
        n, d = twice(self.num), twice(self.den)
        shift_n = {e[iq] % 2 for e in n}
        shift_d = {e[iq] % 2 for e in d}
        if len(shift_n) > 1 or len(shift_d) > 1 or (shift_n and shift_n != shift_d):
            raise ValueError("half-integral q power at m=%d" % m)
        par = shift_d.pop() if shift_d else 0

        def half(terms):
            out = {}
            for e, c in terms.items():
                ee = list(e)
                ee[iq] = (e[iq] - par) // 2
                out[tuple(ee)] = c
            return out
        n, d = half(n), half(d)
        low = tuple(min([0] + [e[i] for e in list(n) + list(d)]) for i in range(_NV))

        def build(terms):
            return _CTX.from_dict({tuple(a - b for a, b in zip(e, low)): _fmpq(c) for e, c in terms.items()})
        return MRat(build(n), build(d))

    def total_degree_in(self, names) -> int:
        """Homogeneity degree in the given variables (raises if not homogeneous)."""
        idx = [_IDX[v] for v in names]
        def degs(p):
            return {sum(e[i] for i in idx) for e in p.to_dict()}
        dn, dd = degs(self.num), degs(self.den)
        if self.is_zero():
            return 0
        if len(dn) != 1 or len(dd) != 1:
            raise ValueError("not homogeneous")
        return int(dn.pop() - dd.pop())

    def __repr__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


def var(name: str) -> MRat:
    return MRat.var(name)


def mq(k: int = 1) -> MRat:
    """q^k as an MRat."""
    return MRat.monomial(1, q=k)


# --------------------------------------------------------------------------
# Phase, FracMonomial, Scalar
# --------------------------------------------------------------------------

class Phase:
    """exp(i*pi*r), r kept in [0, 2)."""

    __slots__ = ("r",)

    def __init__(self, r=0):
        self.r = as_fraction(r) % 2

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.r + other.r)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.r - other.r)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.r * n)

    def inv(self) -> "Phase":
        return Phase(-self.r)

    def __eq__(self, other):
        return isinstance(other, Phase) and self.r == other.r

    def __hash__(self):
        return hash(("phase", self.r))

    def sign(self):
        """+1 or -1 when real, else None."""
        if self.r == 0:
            return 1
        if self.r == 1:
            return -1
        return None

    def to_complex(self) -> complex:
        import cmath
        return cmath.exp(1j * cmath.pi * float(self.r))

    def __repr__(self):
        return "e^(i*pi*%s)" % self.r


class FracMonomial:
    """prod var^e with rational exponents; `den` optionally bounds the exponent denominators."""

    __slots__ = ("exps",)

    def __init__(self, exps=None, den: int | None = None):
        e = {k: as_fraction(v) for k, v in (exps or {}).items() if v != 0}
        if den is not None:
            for k, v in e.items():
                if den % v.denominator:
                    raise ValueError("exponent %s of %s not in (1/%d)Z" % (v, k, den))
        self.exps = e

    def __mul__(self, other: "FracMonomial") -> "FracMonomial":
        e = dict(self.exps)
        for k, v in other.exps.items():
            e[k] = e.get(k, 0) + v
        return FracMonomial(e)

    def __pow__(self, n) -> "FracMonomial":
        return FracMonomial({k: v * n for k, v in self.exps.items()})

    def inv(self) -> "FracMonomial":
        return self ** -1

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        return isinstance(other, FracMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(tuple(sorted(self.exps.items())))

    def get(self, name):
        return self.exps.get(name, Fraction(0))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.exps.values())

    def to_mrat(self) -> MRat:
        if not self.is_integral():
            raise ValueError("fractional exponents")
        return MRat.monomial(1, **{k: int(v) for k, v in self.exps.items()})

    def __repr__(self):
        if not self.exps:
            return "1"
        return "*".join("%s^(%s)" % kv for kv in sorted(self.exps.items()))


class Scalar:
    """phase * qpart * zpart, with the q exponent of zpart reduced to [0, 1)."""

    __slots__ = ("phase", "qpart", "zpart")

    def __init__(self, phase=None, qpart=None, zpart=None):
        phase = phase if isinstance(phase, Phase) else Phase(phase or 0)
        qpart = QRat(1) if qpart is None else QRat.coerce(qpart)
        zpart = zpart if isinstance(zpart, FracMonomial) else FracMonomial(zpart)
        eq = zpart.get("q")
        fl = eq.numerator // eq.denominator
        if fl:
            qpart = qpart * QRat.q(fl)
            e = dict(zpart.exps)
            e["q"] = eq - fl
            zpart = FracMonomial(e)
        # fold the overall sign of qpart into the phase
        if not qpart.is_zero() and qpart.num.leading_coefficient() < 0:
            qpart = -qpart
            phase = phase * Phase(1)
        self.phase, self.qpart, self.zpart = phase, qpart, zpart

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            other = Scalar(0, other)
        return Scalar(self.phase * other.phase, self.qpart * other.qpart, self.zpart * other.zpart)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        return Scalar(self.phase.inv(), self.qpart.inv(), self.zpart.inv())

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(0, other)
        return self * other.inv()

    def __pow__(self, n: int):
        return Scalar(self.phase ** n, self.qpart ** n, self.zpart ** n)

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.phase == other.phase
                and self.qpart == other.qpart and self.zpart == other.zpart)

    def __hash__(self):
        return hash((self.phase, self.qpart, self.zpart))

    def as_dict(self) -> dict:
        return {"phase": str(self.phase.r), "q": repr(self.qpart), "mono": repr(self.zpart)}

    def __repr__(self):
        return "Scalar(%r, %r, %r)" % (self.phase, self.qpart, self.zpart)


def prod(xs, start=None):
    xs = list(xs)
    if start is None:
        start = MRat(1)
    return reduce(lambda a, b: a * b, xs, start)
