"""R-matrices of U_q(sl^(M|N)) on V x V and their scalar factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import MRat, QRat, Scalar, mq, var
from .graded import GradedMat, Grading, graded_permutation, tensor
from .qproduct import QProduct

__all__ = [
    "CartanData", "cartan", "abc", "abc_bar", "rbar_vv", "rho", "m_matrix", "kappa",
    "chi", "rbar_derived", "explicit_rbar_vstar_v", "explicit_rbar_v_vstar",
    "check_ybe", "check_unitarity", "check_crossing", "check_initial",
    "check_derived", "mrat_qseries", "series_product", "KAPPA_KINDS",
]


@dataclass(frozen=True)
class CartanData:
    M: int
    N: int
    nu: tuple = field(repr=False)
    A: tuple = field(repr=False)

    @property
    def rank(self):
        return self.M + self.N

    def diagonal(self):
        return tuple(self.A[i][i] for i in range(self.rank))


def _check_mn(M: int, N: int):
    if M < 1 or N < 1:
        raise ValueError("M, N must be positive")
    if M == N:
        raise ValueError("M = N is excluded (scalar factors divide by M-N)")


def cartan(M: int, N: int) -> CartanData:
    _check_mn(M, N)
    n = M + N
    nu = tuple(1 if 1 <= i <= M else -1 for i in range(n + 1))

    def nu_(i):
        return nu[i % n] if i % n else nu[0]
    A = []
    for i in range(n):
        row = []
        for j in range(n):
            v = 0
            if i == j:
                v += nu_(i) + nu_(i + 1)
            if i % n == (j + 1) % n:
                v -= nu_(i)
            if (i + 1) % n == j % n:
                v -= nu_(i + 1)
            row.append(v)
        A.append(tuple(row))
    return CartanData(M, N, nu, tuple(A))


# --------------------------------------------------------------------------
# the six-vertex type weights
# --------------------------------------------------------------------------

def abc(z):
    """a(z), b(z), c(z) for an MRat argument z."""
    z = MRat.coerce(z)
    q = mq()
    q2 = mq(2)
    den = 1 - q2 * z
    return (z - q2) / den, (1 - z) * q / den, (1 - q2) / den


def abc_bar(z):
    """bar-b and bar-c: q(1-z)/(q^2-z), z(1-q^2)/(q^2-z)."""
    z = MRat.coerce(z)
    q = mq()
    q2 = mq(2)
    return q * (1 - z) / (q2 - z), z * (1 - q2) / (q2 - z)


def rbar_vv(g: Grading, z) -> GradedMat:
    """R-bar_{VV}(z) with entries R_{k1,k2}^{j1,j2} stored at ((k1,k2),(j1,j2))."""
    _check_mn(g.M, g.N)
    a, b, c = abc(z)
    z = MRat.coerce(z)
    n = g.dim
    e = {}
    for j in range(1, n + 1):
        e[((j, j), (j, j))] = MRat(-1) if j <= g.M else a
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            e[((i, j), (i, j))] = -b
            s = -1 if g(i) * g(j) else 1
            e[((i, j), (j, i))] = c * s if i < j else z * c * s
    return GradedMat(g, 2, e)


def rho(M: int, N: int) -> list:
    """2*rho_j, j = 1..M+N."""
    out = [M - N + 1 - 2 * j for j in range(1, M + 1)]
    out += [-M - N - 1 + 2 * k for k in range(1, N + 1)]
    return out


def m_matrix(g: Grading) -> GradedMat:
    return GradedMat.diagonal(g, [mq(r) for r in rho(g.M, g.N)])


def _m_tensor_one(g: Grading, inverse: bool = False) -> GradedMat:
    r = rho(g.M, g.N)
    ent = {}
    for k1 in range(1, g.dim + 1):
        for k2 in range(1, g.dim + 1):
            ent[((k1, k2), (k1, k2))] = mq(-r[k1 - 1] if inverse else r[k1 - 1])
    return GradedMat(g, 2, ent)


# --------------------------------------------------------------------------
# scalar factors
# --------------------------------------------------------------------------

KAPPA_KINDS = ("VV", "V*V*", "V*V", "VV*")


def _kappa_vv(typ: str, M: int, N: int) -> QProduct:
    D = M - N
    P = QProduct.poch
    if typ == "I":
        if D > 0:
            p = 2 * D
            return (QProduct.scalar(Scalar(1)) * QProduct.monomial(1 - Fraction(1, D))
                    * P(2, p, -1) * P(p, p, 1) / (P(2, p, 1) * P(p, p, -1)))
        p = -2 * D
        return (QProduct.monomial(1 - Fraction(1, D))
                * P(p, p, -1) * P(p + 2, p, 1) / (P(p, p, 1) * P(p + 2, p, -1)))
    if typ == "II":
        if D > 0:
            p = 2 * D
            return (QProduct.scalar(Scalar(1)) * QProduct.monomial(Fraction(1, D))
                    * P(p, p, 1) * P(p - 2, p, -1) / (P(p, p, -1) * P(p - 2, p, 1)))
        p = -2 * D
        return (QProduct.monomial(-1 + Fraction(1, D))
                * P(-2, p, 1) * P(p, p, -1) / (P(-2, p, -1) * P(p, p, 1)))
    raise ValueError("type must be 'I' or 'II'")


def kappa(kind: str, typ: str, M: int, N: int) -> QProduct:
    """kappa^{(typ)}_{kind}(x) as a canonical QProduct in x."""
    _check_mn(M, N)
    vv = _kappa_vv(typ, M, N)
    if kind == "VV":
        return vv
    if typ == "I":
        ss = -vv if M > N else -(vv * QProduct.monomial(-1))
    else:
        ss = vv
    if kind == "V*V*":
        return ss
    if kind == "V*V":
        return ss.invert()
    if kind == "VV*":
        # f(q^{2(N-M)}/x)
        return ss.invert().shift(-2 * (N - M))
    raise ValueError("unknown kind %r" % kind)


def chi(M: int, N: int) -> QProduct:
    """chi(x), defined through chi(q^{M-N} z) = ...; returned as a function of x."""
    _check_mn(M, N)
    D = M - N
    P = QProduct.poch
    if D > 0:
        p = 2 * D
        f = QProduct.monomial(-Fraction(1, D)) * P(D - 1, p, 1) * P(D + 1, p, -1) / (P(D - 1, p, -1) * P(D + 1, p, 1))
    else:
        p = -2 * D
        f = QProduct.monomial(-Fraction(1, D)) * P(-D + 1, p, 1) * P(-D - 1, p, -1) / (P(-D + 1, p, -1) * P(-D - 1, p, 1))
    # f is a function of z with x = q^D z, so chi(x) = f(q^{-D} x)
    return f.shift(-D)


# --------------------------------------------------------------------------
# series helpers
# --------------------------------------------------------------------------

def mrat_qseries(f: MRat, K: int) -> dict:
    """Expand an MRat in powers of q through q^K (coefficients rational in the other variables)."""
    iq = 0

    def split(poly):
        out = {}
        for e, c in poly.to_dict().items():
            e = [int(x) for x in e]
            k = e[iq]
            e[iq] = 0
            mono = MRat.monomial(c, **{n: p for n, p in zip(_varnames(), e) if p})
            out[k] = out.get(k, MRat(0)) + mono
        return out
    num, den = split(f.num), split(f.den)
    v = min(den)
    d0 = den[v]
    inv0 = d0.inv()
    top = K + v
    res = {}
    # f = num/den ; den = q^v (d0 + d1 q + ...)
    coeffs = []
    for n in range(0, top - min(num) + 1):
        s = num.get(n + min(num), MRat(0))
        for j in range(1, n + 1):
            dj = den.get(v + j)
            if dj is not None and not coeffs[n - j].is_zero():
                s = s - dj * coeffs[n - j]
        coeffs.append(s * inv0)
    for n, c in enumerate(coeffs):
        k = n + min(num) - v
        if k <= K and not c.is_zero():
            res[k] = c
    return res


def _varnames():
    from .exact import VARS
    return VARS


def series_product(a: dict, b: dict, K: int) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= K:
                out[i + j] = out.get(i + j, MRat(0)) + x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _low_q_order(qp: QProduct) -> int:
    """A lower bound for the q-valuation of a QProduct expansion."""
    low = qp.coef.qpart.shift
    for c, e in qp.fin.items():
        if c < 0:
            low += c * e
    return low


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

def _ratio_vars():
    z1, z2, z3 = var("z1"), var("z2"), var("z3")
    return z1, z2, z3


def check_ybe(g: Grading) -> dict:
    z1, z2, z3 = _ratio_vars()
    R12 = rbar_vv(g, z1 / z2).embed((0, 1), 3)
    R13 = rbar_vv(g, z1 / z3).embed((0, 2), 3)
    R23 = rbar_vv(g, z2 / z3).embed((1, 2), 3)
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    diff = lhs.first_difference(rhs)
    return {"ok": diff is None, "witness": None if diff is None else {"entry": str(diff[0])},
            "nnz": len(lhs.entries)}


def check_unitarity(g: Grading, K: int = 40) -> dict:
    z = var("z")
    P = graded_permutation(g)
    R = rbar_vv(g, z)
    R21inv = P @ rbar_vv(g, 1 / z) @ P
    prod = R @ R21inv
    u = prod.is_scalar()
    out = {"ok": True, "u": None, "kappa": {}}
    if u is None:
        d = prod.first_difference(GradedMat.identity(g, 2))
        return {"ok": False, "u": None, "witness": {"entry": str(d[0]) if d else None}}
    out["u"] = str(u)
    out["ok"] = u == MRat(1)
    for typ in ("I", "II"):
        k = kappa("VV", typ, g.M, g.N)
        exact_ok = (k * k.invert()) == QProduct.one()
        ph1, fr1, s1 = k.qseries(K - _low_q_order(k.invert()))
        ph2, fr2, s2 = k.invert().qseries(K - _low_q_order(k))
        prodser = series_product(s1, s2, K)
        series_ok = (ph1 * ph2).r == 0 and (fr1 * fr2).exps == {} and prodser == {0: MRat(1)}
        out["kappa"][typ] = {"exact": exact_ok, "series": series_ok}
        out["ok"] = out["ok"] and exact_ok and series_ok
    return out


def _crossing_product(g: Grading, use_m: bool = True) -> GradedMat:
    z = var("z")
    k = 2 * (g.N - g.M)
    R = rbar_vv(g, z)
    Rs = rbar_vv(g, z * mq(k))
    if use_m:
        Rs = _m_tensor_one(g, inverse=True) @ Rs @ _m_tensor_one(g)
    return R.inverse().supertranspose("st1") @ Rs.supertranspose("st1")


def check_crossing(g: Grading, K: int = 40, use_m: bool = True) -> dict:
    prod = _crossing_product(g, use_m)
    s = prod.is_scalar()
    if s is None:
        d = None
        for key, v in sorted(prod.entries.items()):
            if key[0] != key[1]:
                d = key
                break
        return {"ok": False, "scalar": None, "witness": {"entry": str(d)}}
    out = {"ok": True, "scalar": str(s), "kappa": {}}
    kk = 2 * (g.N - g.M)
    for typ in ("I", "II"):
        kap = kappa("VV", typ, g.M, g.N)
        ratio = kap.shift(kk) / kap
        exact_ok = ratio.is_rational() and ratio.to_mrat("z") == s
        # series route: s * kappa(z) == kappa(q^k z) through q^K
        low = min(_low_q_order(kap), _low_q_order(kap.shift(kk)))
        margin = K - low + 4
        ph_a, fr_a, sa = kap.qseries(margin)
        ph_b, fr_b, sb = kap.shift(kk).qseries(margin)
        sser = mrat_qseries(s, margin + 10)
        lhs = series_product(sser, sa, margin)
        lhs = {n: c for n, c in lhs.items() if n <= K}
        rhs = {n: c for n, c in sb.items() if n <= K}
        series_ok = ph_a == ph_b and fr_a == fr_b and lhs == rhs
        out["kappa"][typ] = {"exact": exact_ok, "series": series_ok}
        out["ok"] = out["ok"] and exact_ok and series_ok
    return out


def check_initial(g: Grading) -> dict:
    """R^{(i)}(1) = P ?  Outcome per kappa type: equal, equal up to global sign, or failure."""
    R1 = rbar_vv(g, MRat(1))
    P = graded_permutation(g)
    res = {}
    for typ in ("I", "II"):
        k1 = kappa("VV", typ, g.M, g.N).at_one()
        if k1.const or not k1.coef.qpart == QRat(1) or k1.coef.phase.sign() is None:
            res[typ] = {"kappa_at_1": repr(k1), "outcome": "failure"}
            continue
        sgn = k1.coef.phase.sign()
        R = R1.scale(sgn)  # divide by +-1
        if R == P:
            outcome = "equal"
        elif R == P.scale(-1):
            outcome = "equal up to global sign"
        else:
            outcome = "failure"
        res[typ] = {"kappa_at_1": sgn, "outcome": outcome}
    return res


# --------------------------------------------------------------------------
# derived R-matrices
# --------------------------------------------------------------------------

def rbar_derived(kind: str, g: Grading, z=None) -> GradedMat:
    z = var("z") if z is None else MRat.coerce(z)
    if kind == "V*V":
        return rbar_vv(g, z).inverse().supertranspose("st1")
    if kind == "VV*":
        k = 2 * (g.N - g.M)
        inner = _m_tensor_one(g, inverse=True) @ rbar_vv(g, mq(k) / z) @ _m_tensor_one(g)
        return inner.supertranspose("st1")
    if kind == "V*V*":
        return rbar_vv(g, z).supertranspose("st12")
    if kind == "VV":
        return rbar_vv(g, z)
    raise ValueError("unknown kind %r" % kind)


def _ee(g, i, j, k, l, coeff, koszul=False):
    """coeff * E_ij x E_kl.  By default E_ij x E_kl is the plain component
    matrix (the closed forms list components); koszul=True inserts the
    action sign instead."""
    if koszul:
        return tensor([GradedMat.elementary(g, i, j), GradedMat.elementary(g, k, l)]).scale(coeff)
    return GradedMat(g, 2, {((i, k), (j, l)): MRat.coerce(coeff)})


def _explicit(g: Grading, w, cross_lo, cross_hi) -> GradedMat:
    a, b, c = abc(w)
    n = g.dim
    out = GradedMat(g, 2)
    for j in range(1, n + 1):
        out = out + _ee(g, j, j, j, j, -1 if j <= g.M else a)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out = out + _ee(g, i, i, j, j, -b)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out + cross_lo(i, j, c) + cross_hi(i, j, c)
    return out


def explicit_rbar_vstar_v(g: Grading, z=None) -> GradedMat:
    z = var("z") if z is None else MRat.coerce(z)
    w = 1 / z

    def lo(i, j, c):
        return _ee(g, i, j, i, j, c * (-1 if g(i) else 1))

    def hi(i, j, c):
        return _ee(g, j, i, j, i, w * c * (-1 if g(j) else 1))
    return _explicit(g, w, lo, hi)


def explicit_rbar_v_vstar(g: Grading, z=None, swap_signs: bool = False) -> GradedMat:
    """Closed form of R-bar_{VV*}; swap_signs exchanges the two crossed-term signs (diagnostic)."""
    z = var("z") if z is None else MRat.coerce(z)
    w = mq(-2 * (g.M - g.N)) / z
    r = rho(g.M, g.N)

    def sg(i, j, first):
        k = (j if first else i) if swap_signs else (i if first else j)
        return -1 if g(k) else 1

    def lo(i, j, c):
        return _ee(g, j, i, j, i, c * sg(i, j, True) * mq(r[j - 1] - r[i - 1]))

    def hi(i, j, c):
        return _ee(g, i, j, i, j, w * c * sg(i, j, False) * mq(r[i - 1] - r[j - 1]))
    return _explicit(g, w, lo, hi)


def check_derived(g: Grading) -> dict:
    """Constructed derived R-matrices against the closed forms, plus the unitary relation."""
    z = var("z")
    out = {}
    vsv = rbar_derived("V*V", g)
    vvs = rbar_derived("VV*", g)
    for kind, built, ref in (("V*V", vsv, explicit_rbar_vstar_v(g)), ("VV*", vvs, explicit_rbar_v_vstar(g))):
        d = built.first_difference(ref)
        out[kind] = {"match": d is None, "witness": None if d is None else str(d[0])}
    out["VV*_swapped_signs_match"] = vvs == explicit_rbar_v_vstar(g, swap_signs=True)
    prod = vvs @ rbar_derived("V*V", g, 1 / z)
    s = prod.is_scalar()
    out["unitary_identity"] = s is not None and s == MRat(1)
    out["unitary_scalar"] = None if s is None else str(s)
    # normalised form: the R-bar product must equal kappa_{VV*}(z) kappa_{V*V}(1/z)
    norm = {}
    for typ in ("I", "II"):
        kp = kappa("VV*", typ, g.M, g.N) * kappa("V*V", typ, g.M, g.N).invert()
        norm[typ] = s is not None and kp.is_rational() and kp.to_mrat("z") == s
    out["unitary_normalised"] = norm
    ss = rbar_derived("V*V*", g)
    R = rbar_vv(g, z)
    out["V*V*_transpose"] = all(ss[(k, j)] == R[(j, k)] for (k, j) in set(ss.entries) | {(b, a) for (a, b) in R.entries})
    out["ok"] = (out["V*V"]["match"] and out["VV*"]["match"] and out["unitary_identity"]
                 and out["V*V*_transpose"])
    return out
