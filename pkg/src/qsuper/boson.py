"""Free-boson exponents and their two-point contractions.

Mode functions are exact rational functions of (q, Qh) where Qh stands for
q^(m/2), m > 0 being the mode number.  A closed-form identity in Qh holds for
every m at once; `MRat.specialize_qh(m)` gives the value at a single mode.

An exponent collects, per oscillator species s (a1..aM, b1..bN, c1..cN),

    ann[s]  coefficient of s_m z^-m     (m > 0)
    cre[s]  coefficient of s_-m z^m     (m > 0)
    charge[s], log[s], logq[s], theta[s]
            coefficients of Q_s, s_0 log z, s_0 log q and i*pi*s_0,

together with a c-number prefactor (a Scalar in the variables q, z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import MRat, Phase, Scalar, FracMonomial, QRat, mq

__all__ = [
    "BosonBasis", "FieldExponent", "qh_int", "h_modes", "hstar_modes",
    "alpha_beta", "field_exponent", "contract_pair", "Contraction",
    "compose", "hstar_kernel", "hstar_kernel_closed", "hstar_charge",
]

QH = MRat.var("Qh")
_Q = MRat.var("q")
_QQ = _Q - MRat.monomial(1, q=-1)  # q - q^-1


def qh_int(k: int) -> MRat:
    """[k m]_q written in Qh = q^(m/2)."""
    return (MRat.monomial(1, Qh=2 * k) - MRat.monomial(1, Qh=-2 * k)) / _QQ


def qh_pow(k) -> MRat:
    """q^(k m) = Qh^(2k); k may be a half-integer."""
    k2 = Fraction(k) * 2
    if k2.denominator != 1:
        raise ValueError("q^(k m) needs 2k integral")
    return MRat.monomial(1, Qh=int(k2))


@dataclass(frozen=True)
class BosonBasis:
    """Species a^1..a^M, b^1..b^N, c^1..c^N with [s_m, s_-m] = g_s [m]^2/m, [s_0, Q_s] = g_s."""

    M: int
    N: int

    @property
    def species(self) -> tuple:
        return (tuple("a%d" % i for i in range(1, self.M + 1))
                + tuple("b%d" % j for j in range(1, self.N + 1))
                + tuple("c%d" % j for j in range(1, self.N + 1)))

    @staticmethod
    def grade(s: str) -> int:
        return -1 if s[0] == "b" else 1

    def kernel(self, s: str) -> MRat:
        """m [s_m, s_-m] as a function of Qh."""
        return qh_int(1) ** 2 * self.grade(s)


def h_modes(M: int, N: int, i: int) -> dict:
    """h^i_m = sum_s e_s(m) s_m; returns {s: (MRat in Qh for m > 0, value at m = 0)}."""
    lo, hi = MRat.monomial(1, Qh=-1), QH  # q^(-|m|/2), q^(|m|/2)
    if 1 <= i <= M - 1:
        return {"a%d" % i: (lo, Fraction(1)), "a%d" % (i + 1): (-hi, Fraction(-1))}
    if i == M:
        return {"a%d" % M: (lo, Fraction(1)), "b1": (lo, Fraction(1))}
    if M + 1 <= i <= M + N - 1:
        j = i - M
        return {"b%d" % j: (-hi, Fraction(-1)), "b%d" % (j + 1): (lo, Fraction(1))}
    raise ValueError("index %d out of range" % i)


def alpha_beta(M: int, N: int, i: int, j: int) -> tuple:
    mn, mx = min(i, j), max(i, j)
    a = mn if mn <= M else 2 * M - mn
    b = M - N - mx if mx <= M else -M - N + mx
    return a, b


def hstar_modes(M: int, N: int, i: int) -> dict:
    """h^{*i}_m = sum_j [a m][b m]/([(M-N) m][m]) h^j_m, expanded in species."""
    D = M - N
    out = {}
    for j in range(1, M + N):
        a, b = alpha_beta(M, N, i, j)
        cm = qh_int(a) * qh_int(b) / (qh_int(D) * qh_int(1))
        c0 = Fraction(a * b, D)
        for s, (em, e0) in h_modes(M, N, j).items():
            pm, p0 = out.get(s, (MRat(0), Fraction(0)))
            out[s] = (pm + cm * em, p0 + c0 * e0)
    return {s: v for s, v in out.items() if not (v[0].is_zero() and v[1] == 0)}


def hstar_kernel(M: int, N: int, i: int, k: int) -> MRat:
    """m [h^{*i}_m, h^{*k}_-m] computed from the species expansion."""
    basis = BosonBasis(M, N)
    A, B = hstar_modes(M, N, i), hstar_modes(M, N, k)
    tot = MRat(0)
    for s in A:
        if s in B:
            tot = tot + A[s][0] * B[s][0] * basis.kernel(s)
    return tot


def hstar_kernel_closed(M: int, N: int, which: str) -> MRat:
    """Closed forms (times m) for the pairs (1,1), (last,last), (1,last)."""
    D = M - N
    if which == "11":
        return qh_int(D - 1) * qh_int(1) ** 2 / qh_int(D)
    if which == "LL":
        return -qh_int(D + 1) * qh_int(1) ** 2 / qh_int(D)
    if which == "1L":
        return -qh_int(1) ** 3 / qh_int(D)
    raise ValueError(which)


def hstar_charge(M: int, N: int, i: int) -> dict:
    """Coefficients of Q_s in Q_h^{*i}."""
    return {s: v[1] for s, v in hstar_modes(M, N, i).items() if v[1] != 0}


# --------------------------------------------------------------------------
# exponents
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldExponent:
    label: str
    prefactor: Scalar = field(default_factory=Scalar)
    ann: dict = field(default_factory=dict)
    cre: dict = field(default_factory=dict)
    charge: dict = field(default_factory=dict)
    log: dict = field(default_factory=dict)
    logq: dict = field(default_factory=dict)
    theta: dict = field(default_factory=dict)

    def at(self, p) -> "FieldExponent":
        """The same operator evaluated at q^p z."""
        p = Fraction(p)
        pref = self.prefactor * Scalar(0, 1, {"q": p * self.prefactor.zpart.get("z")})
        return FieldExponent(
            self.label, pref,
            {s: v * qh_pow(-p) for s, v in self.ann.items()},
            {s: v * qh_pow(p) for s, v in self.cre.items()},
            dict(self.charge), dict(self.log),
            _addd(self.logq, {s: v * p for s, v in self.log.items()}),
            dict(self.theta))

    def scaled(self, c: Fraction) -> "FieldExponent":
        """Exponent multiplied by a rational constant (prefactor dropped)."""
        c = Fraction(c)
        return FieldExponent(self.label, Scalar(),
                             {s: v * c for s, v in self.ann.items()},
                             {s: v * c for s, v in self.cre.items()},
                             {s: v * c for s, v in self.charge.items()},
                             {s: v * c for s, v in self.log.items()},
                             {s: v * c for s, v in self.logq.items()},
                             {s: v * c for s, v in self.theta.items()})

    def with_prefactor(self, s: Scalar, label: str | None = None) -> "FieldExponent":
        return FieldExponent(label or self.label, self.prefactor * s, self.ann, self.cre,
                             self.charge, self.log, self.logq, self.theta)

    def is_trivial(self) -> bool:
        return (all(v.is_zero() for v in self.ann.values())
                and all(v.is_zero() for v in self.cre.values())
                and not any(self.charge.values()) and not any(self.log.values())
                and not any(self.logq.values()) and not any(self.theta.values()))


def _addd(a: dict, b: dict, zero=0) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, zero) + v
    return out


def compose(*exps: FieldExponent, label: str = "") -> FieldExponent:
    """Exponent of a normal-ordered product: components add, prefactors multiply."""
    pref, ann, cre, ch, lg, lq, th = Scalar(), {}, {}, {}, {}, {}, {}
    for e in exps:
        pref = pref * e.prefactor
        ann = _addd(ann, e.ann, MRat(0))
        cre = _addd(cre, e.cre, MRat(0))
        ch, lg, lq, th = (_addd(ch, e.charge), _addd(lg, e.log),
                          _addd(lq, e.logq), _addd(th, e.theta))
    clean = lambda d: {k: v for k, v in d.items() if v != 0}
    return FieldExponent(label or "*".join(e.label for e in exps), pref,
                         {k: v for k, v in ann.items() if not v.is_zero()},
                         {k: v for k, v in cre.items() if not v.is_zero()},
                         clean(ch), clean(lg), clean(lq), clean(th))


def field_exponent(modes: dict, alpha, shift=0, coeff=1, label: str = "") -> FieldExponent:
    """coeff * F(q^shift z; alpha) for a field F with the given species modes.

    F(z;alpha) = -sum_{m != 0} F_m/[m] q^(-alpha|m|) z^-m + Q_F + F_0 log z.
    """
    coeff, shift = Fraction(coeff), Fraction(shift)
    inv = MRat(1) / qh_int(1)
    damp = qh_pow(-Fraction(alpha))
    ann, cre, ch, lg, lq = {}, {}, {}, {}, {}
    for s, (em, e0) in modes.items():
        # m > 0: -e/[m] q^(-alpha m) (q^shift)^(-m);  m < 0: [-m] = -[m]
        ann[s] = -em * inv * damp * qh_pow(-shift) * coeff
        cre[s] = em * inv * damp * qh_pow(shift) * coeff
        if e0:
            ch[s] = e0 * coeff
            lg[s] = e0 * coeff
            lq[s] = e0 * coeff * shift
    return FieldExponent(label, Scalar(), ann, cre, ch, lg, lq, {})


def species_field(s: str) -> dict:
    """Single-species field (e.g. c^j(z;0))."""
    return {s: (MRat(1), Fraction(1))}


def phase_exponent(theta: dict) -> FieldExponent:
    return FieldExponent("", Scalar(), theta={k: Fraction(v) for k, v in theta.items() if v})


# --------------------------------------------------------------------------
# contraction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Contraction:
    """A(u) B(v) = scalar * exp(sum_{m>0} G(q^(m/2)) (v/u)^m / m) * :A B:.

    `scalar` holds the phase and the powers of q and of u (key "u").
    """

    scalar: Scalar
    G: MRat

    def log_coeff(self, m: int) -> QRat:
        return (self.G.specialize_qh(m) / m).to_qrat()

    def series(self, K: int):
        from .series import TruncSeries
        cs = [QRat(0)] + [self.log_coeff(m) for m in range(1, K + 1)]
        return TruncSeries(cs, K, "y").exp()


def contract_pair(A: FieldExponent, B: FieldExponent, basis: BosonBasis) -> Contraction:
    """Normal-ordering factor of A(u) B(v); A, B already placed at their q-shifted points."""
    G = MRat(0)
    for s, a in A.ann.items():
        b = B.cre.get(s)
        if b is not None:
            G = G + a * b * basis.kernel(s)
    upow, qpow, ph = Fraction(0), Fraction(0), Fraction(0)
    for s, lam in B.charge.items():
        g = basis.grade(s)
        upow += A.log.get(s, 0) * lam * g
        qpow += A.logq.get(s, 0) * lam * g
        ph += A.theta.get(s, 0) * lam * g
    return Contraction(Scalar(Phase(ph), 1, {"u": upow, "q": qpow}), G)
