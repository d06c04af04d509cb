"""Exchange relations, composite normal-ordered products and the constants g, g*.

An exchange ratio compares the two orderings of a pair of operators,

    A(a) B(b) = F(x) B(b) A(a),      x = z1/z2,

where a, b are the points q^s z1 or q^s z2.  Each contraction kernel is first
recognised as a product of q-Pochhammer symbols (exact, valid for all modes)
and the recognised product is re-expanded independently against the engine
series; F is then compared with the stated function both structurally and
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .boson import Contraction, compose, contract_pair
from .catalog import catalog
from .exact import MRat, Phase, QRat, Scalar, VARS
from .qproduct import QProduct
from .rmatrix import chi, kappa, rho
from .rules import product_series

__all__ = [
    "Placed", "kernel_product", "exchange_ratio", "Relation", "relation_table",
    "verify_relation", "current_commutations", "composite_scalar_check", "chains", "chain_exponent",
    "printed_typeII_backward", "gamma_target",
    "eval_constants", "truncated_poch", "a_factor", "b_factor",
]

_IQH = VARS.index("Qh")
_SAMPLES = (mpmath.mpc("0.61", "0.23"), mpmath.mpc("-1.7", "0.4"), mpmath.mpc("0.3", "-2.1"))


# --------------------------------------------------------------------------
# kernel recognition
# --------------------------------------------------------------------------

def _laurent_qh(f: MRat) -> dict | None:
    """{k: c} with f = sum c Qh^k, or None if f is not a Laurent polynomial in Qh."""
    dd = f.den.to_dict()
    if len(dd) != 1:
        return None
    (de, dc), = dd.items()
    out = {}
    for e, c in f.num.to_dict().items():
        out[int(e[_IQH]) - int(de[_IQH])] = Fraction(int(c.p), int(c.q)) / Fraction(int(dc.p), int(dc.q))
    return out


def kernel_product(G: MRat, max_period: int = 64) -> QProduct:
    """The QProduct P(y) with log P = sum_m G(q^(m/2)) y^m / m.

    G must be a function of Qh alone of the form
    sum_a alpha_a t^a / (1 - t^L) + sum_c beta_c t^c with t = Qh^2.
    """
    if G.is_zero():
        return QProduct.one()
    if G.variables() - {"Qh"}:
        raise ValueError("kernel depends on more than Qh: %s" % sorted(G.variables()))
    for L in range(1, max_period + 1):
        terms = _laurent_qh(G * (1 - MRat.monomial(1, Qh=2 * L)))
        if terms is not None:
            break
    else:
        raise ValueError("no period up to %d" % max_period)
    if any(k % 2 for k in terms):
        raise ValueError("odd power of q^(m/2) in the kernel")
    inf, fin = {}, {}
    for k2, c in terms.items():
        k = k2 // 2
        a = (k - 1) % L + 1
        j = (k - a) // L
        inf[a] = inf.get(a, 0) + c
        # t^k/(1-t^L) - t^a/(1-t^L) as a finite sum
        if j > 0:
            for r in range(j):
                fin[a + r * L] = fin.get(a + r * L, 0) - c
        for r in range(-j):
            fin[k + r * L] = fin.get(k + r * L, 0) + c
    out = QProduct.one()
    for a, c in inf.items():
        if c:
            if c.denominator != 1:
                raise ValueError("non-integral Pochhammer exponent")
            out = out * QProduct.poch(a, L, 1, -int(c))
    for k, c in fin.items():
        if c:
            if c.denominator != 1:
                raise ValueError("non-integral linear exponent")
            out = out * QProduct.linear(k, 1, -int(c))
    return out


def _split(c: Contraction):
    """(u exponent, u-free Scalar, QProduct in y)."""
    ex = dict(c.scalar.zpart.exps)
    upow = ex.pop("u", Fraction(0))
    return upow, Scalar(c.scalar.phase, c.scalar.qpart, ex), kernel_product(c.G)


# --------------------------------------------------------------------------
# exchange ratios
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Placed:
    """A catalog operator at the point q^shift * var, var in {"z1", "z2"}."""

    key: object
    var: str
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.var not in ("z1", "z2"):
            raise ValueError("variable must be z1 or z2")

    def label(self) -> str:
        k = self.key if isinstance(self.key, str) else "".join(str(p) for p in self.key)
        s = "" if not self.shift else "q^%s " % self.shift
        return "%s(%s%s)" % (k, s, self.var)


def _oriented(M, N, A: Placed, B: Placed, K: int):
    """Contraction of A B as (z2 exponent, Scalar, QProduct in x) plus the series check."""
    cat = catalog(M, N)
    c = contract_pair(cat[A.key].at(A.shift), cat[B.key].at(B.shift), cat.basis)
    upow, sc, P = _split(c)
    series_ok = True
    if K:
        series_ok = c.series(K).first_mismatch(product_series(P, K)) is None
    # y = b/a;  a = z1 -> y = 1/x and u^e = x^e z2^e;  a = z2 -> y = x
    if A.var == "z1":
        P = P.invert() * QProduct.monomial(upow)
    return upow, sc, P, series_ok


def exchange_ratio(M: int, N: int, A: Placed, B: Placed, K: int = 30) -> dict:
    """F(x) with A B = F(x) B A, or a witness if the ratio is not a function of x."""
    if A.var == B.var:
        raise ValueError("the two operators need distinct variables")
    e1, s1, P1, ok1 = _oriented(M, N, A, B, K)
    e2, s2, P2, ok2 = _oriented(M, N, B, A, K)
    if e1 != e2:
        return {"F": None, "series": ok1 and ok2,
                "witness": {"z2_power": str(e1 - e2)}}
    F = QProduct(s1 / s2) * P1 / P2
    return {"F": F, "series": ok1 and ok2, "witness": None}


def a_factor() -> QProduct:
    """a(x) = (x - q^2)/(1 - q^2 x)."""
    return QProduct.scalar(Scalar(1, QRat.q(2))) * QProduct.linear(-2) / QProduct.linear(2)


def b_factor() -> QProduct:
    """b(x) = q(1 - x)/(1 - q^2 x)."""
    return QProduct.scalar(QRat.q(1)) * QProduct.linear(0) / QProduct.linear(2)


def _at_inverse(f: QProduct, k: int) -> QProduct:
    """x -> f(q^k / x)."""
    return f.invert().shift(-k)


@dataclass(frozen=True)
class Relation:
    rid: str
    left: Placed
    right: Placed
    stated: QProduct
    note: str = ""
    diagnostic: bool = False


def relation_table(M: int, N: int) -> list:
    """Exchange relations of the edge vertex operators, each eps piece separately."""
    z1, z2 = (lambda k, s=0: Placed(k, "z1", Fraction(s))), (lambda k, s=0: Placed(k, "z2", Fraction(s)))
    k2 = 2 * (N - M)
    a, b = a_factor(), b_factor()
    out = [
        Relation("phistar.phistar", z2("Phistar"), z1("Phistar"), kappa("V*V*", "I", M, N).inv()),
        Relation("phistar.phi", z2("Phistar"), z1("Phi"), -_at_inverse(b, k2) / kappa("VV*", "I", M, N)),
        Relation("phi.phistar", z2("Phi"), z1("Phistar"), -_at_inverse(b, 0) / kappa("V*V", "I", M, N)),
        Relation("phi.phi", z2("Phi"), z1("Phi"), a / kappa("VV", "I", M, N)),
        Relation("psi.psi", z1("Psi"), z2("Psi"), kappa("VV", "II", M, N).inv()),
    ]
    for e in (1, -1):
        out.append(Relation("psi.psistar", z1("Psi"), z2(("Psistar", e)),
                            -_at_inverse(b, k2) / kappa("VV*", "II", M, N), "eps=%+d" % e))
        out.append(Relation("psistar.psi", z1(("Psistar", e)), z2("Psi"),
                            -_at_inverse(b, 0) / kappa("V*V", "II", M, N), "eps=%+d" % e))
    for e1 in (1, -1):
        for e2 in (1, -1):
            out.append(Relation("psistar.psistar", z1(("Psistar", e1)), z2(("Psistar", e2)),
                                a / kappa("V*V*", "II", M, N), "eps=%+d,%+d" % (e1, e2)))
    # type I / type II commutation; parity [1] = 1, [M+N] = 0
    X = chi(M, N)
    for e in (1, -1):
        out.append(Relation("psistar.phistar", z1(("Psistar", e)), z2("Phistar"), X, "eps=%+d" % e))
        out.append(Relation("psistar.phi", z1(("Psistar", e)), z2("Phi"), _at_inverse(X, k2),
                            "eps=%+d" % e))
        out.append(Relation("psistar.phi.alt", z1(("Psistar", e)), z2("Phi"), _at_inverse(X, -k2),
                            "eps=%+d; argument q^(2(M-N)) z2/z1" % e, True))
    out.append(Relation("psi.phi", z1("Psi"), z2("Phi"), X))
    out.append(Relation("psi.phistar", z1("Psi"), z2("Phistar"), -_at_inverse(X, 0)))
    # same relation with kappa^I_VV replaced by kappa^I_V*V*
    out.append(Relation("phi.phi.alt", z2("Phi"), z1("Phi"), a / kappa("V*V*", "I", M, N),
                        "kappa^I_VV -> kappa^I_V*V*", True))
    return out


def _numeric_equal(f: QProduct, g: QProduct, qval: float = 0.3, tol: float = 1e-10) -> bool:
    for x in _SAMPLES:
        u, v = f.evalf(qval, x), g.evalf(qval, x)
        if abs(u - v) > tol * max(abs(u), abs(v), 1e-300):
            return False
    return True


def verify_relation(M: int, N: int, rel: Relation, K: int = 30) -> dict:
    res = exchange_ratio(M, N, rel.left, rel.right, K)
    F = res["F"]
    name = rel.rid + ("[%s]" % rel.note if rel.note else "")
    if F is None:
        return {"relation": name, "ok": False, "structural": False, "numeric": False,
                "series": res["series"], "witness": res["witness"]}
    structural = F == rel.stated
    numeric = _numeric_equal(F, rel.stated)
    ok = structural and numeric and res["series"]
    witness = None
    if not ok:
        witness = {"engine": repr(F), "stated": repr(rel.stated),
                   "ratio": repr(F / rel.stated)}
    return {"relation": name, "ok": ok, "structural": structural, "numeric": numeric,
            "series": res["series"], "witness": witness}


def current_commutations(M: int, N: int, K: int = 20) -> list:
    """Edge vertex operators against the currents: the exchange constant must be +-1.

    Split operators are compared piece by piece.
    """
    def keys(sign):
        out = []
        for i in range(1, M + N):
            split = (sign == "+" and i > M) or (sign == "-" and i >= M)
            out += [("X" + sign, i, e) for e in (1, -1)] if split else [("X" + sign, i)]
        return out

    cases = []
    for k in keys("+"):
        cases.append(("Phistar", k, -1 if k[1] == M else 1))
        cases.append(("Phi", k, 1))
    for k in keys("-"):
        cases.append(("Psi", k, -1 if k[1] == M else 1))
        for e in (1, -1):
            cases.append((("Psistar", e), k, 1))
    out = []
    for vo, cur, want in cases:
        res = exchange_ratio(M, N, Placed(vo, "z1"), Placed(cur, "z2"), K)
        F = res["F"]
        ok = F is not None and F == QProduct.scalar(want) and res["series"]
        out.append({"pair": "%s/%s" % (Placed(vo, "z1").label(), Placed(cur, "z2").label()),
                    "expected": want, "ok": ok,
                    "witness": None if ok else {"engine": repr(F), "detail": res["witness"]}})
    return out


# --------------------------------------------------------------------------
# composite normal-ordered products
# --------------------------------------------------------------------------

def composite_scalar_check(M: int, N: int, chain: list, target: Scalar, sweep: int = 50) -> dict:
    """:prod_k O_k(q^{p_k} z): = target * id ?

    chain: list of (catalog key, p).  Oscillator coefficients must cancel as
    closed forms in Qh; a numeric sweep over m <= sweep guards the algebra.
    """
    cat = catalog(M, N)
    placed = [cat[k].at(Fraction(p)) for k, p in chain]
    tot = compose(*placed, label="chain") if placed else None
    if tot is None:
        return {"ok": target == Scalar(), "scalar": Scalar().as_dict(), "witness": None}
    bad = {}
    for side in ("ann", "cre"):
        for s, v in getattr(tot, side).items():
            if not v.is_zero():
                bad["%s:%s" % (side, s)] = repr(v)
    # redundant sweep: per-mode sums of the unreduced pieces
    for m in range(1, sweep + 1):
        for side in ("ann", "cre"):
            for s in cat.basis.species:
                acc = QRat(0)
                for e in placed:
                    v = getattr(e, side).get(s)
                    if v is not None:
                        acc = acc + v.specialize_qh(m).to_qrat()
                if not acc.is_zero():
                    bad.setdefault("%s:%s@m=%d" % (side, s, m), repr(acc))
    zero_modes = {f: {k: str(v) for k, v in getattr(tot, f).items()}
                  for f in ("charge", "log", "logq", "theta") if getattr(tot, f)}
    residual = tot.prefactor
    ok = not bad and not zero_modes and residual == target
    witness = None
    if not ok:
        witness = {"oscillators": bad or None, "zero_modes": zero_modes or None,
                   "residual": residual.as_dict(), "target": target.as_dict()}
        if not bad and not zero_modes and residual / target == Scalar(1):
            witness["residual_over_target"] = "-1"
    return {"ok": ok, "scalar": residual.as_dict(), "witness": witness}


def chain_exponent(M: int, N: int, chain: list):
    """Exponent of the normal-ordered chain; its prefactor is the residual scalar."""
    cat = catalog(M, N)
    return compose(*[cat[k].at(Fraction(p)) for k, p in chain], label="chain")


def chains(M: int, N: int) -> dict:
    """The four composite products, keyed by name, as (chain, target).

    Type I needs M > N, type II needs N > M; only the admissible pair is returned.
    """
    D = M - N
    e = Fraction(D - 1, D)
    lo = Scalar(0, 1, {"q": -Fraction(D - 1, 2), "z": e})
    hi = Scalar(0, 1, {"q": Fraction(D - 1, 2), "z": e})
    out = {}
    if D > 0:
        fw = ([("Phistar", -1)] + [(("X-", i), -i) for i in range(1, M)] + [(("X-", M, 1), -M)]
              + [(("X-", M + j, 1), -M + j) for j in range(1, N)] + [("Phi", -2 * D - 1)])
        bw = ([("Phistar", -1)] + [(("X-", i), i) for i in range(1, M)] + [(("X-", M, -1), M)]
              + [(("X-", M + j, -1), M - j) for j in range(1, N)] + [("Phi", -1)])
        out["typeI.forward"] = (fw, lo)
        out["typeI.backward"] = (bw, hi)
    else:
        fw = ([("Psi", -1)] + [(("X+", i), -i) for i in range(1, M + 1)]
              + [(("X+", M + j, -1), -M + j) for j in range(1, N)] + [(("Psistar", -1), -1)])
        bw = ([("Psi", -1)] + [(("X+", i), i) for i in range(1, M + 1)]
              + [(("X+", M + j, 1), M - j) for j in range(1, N)] + [(("Psistar", 1), 2 * D - 1)])
        out["typeII.forward"] = (fw, lo)
        out["typeII.backward"] = (bw, hi)
    return out


def printed_typeII_backward(M: int, N: int) -> tuple:
    """Type II backward chain with X^{+,M+N-1}_+ at q^(M-N-1) z instead of q^(M-N+1) z."""
    ch, tg = chains(M, N)["typeII.backward"]
    ch = list(ch)
    if N >= 2:
        ch[-2] = (("X+", M + N - 1, 1), M - N - 1)
    return ch, tg


# --------------------------------------------------------------------------
# constants
# --------------------------------------------------------------------------

def truncated_poch(a, p, qval, tol=mpmath.mpf("1e-30")):
    """(q^a; q^p)_inf by a plain product, stopped once the tail bound is below tol.

    For |x_k| = q^(a + k p) < 1/2 the tail satisfies
    |log prod_{k >= K} (1 - x_k)| <= 2 |x_K| / (1 - q^p).
    Returns (value, factors used, tail bound on the relative error).
    """
    q = mpmath.mpf(qval)
    val, k = mpmath.mpf(1), 0
    while True:
        x = q ** (a + k * p)
        if abs(x) < 0.5:
            bound = 2 * abs(x) / (1 - q ** p)
            if bound < tol:
                return val, k, mpmath.expm1(bound)
        val *= 1 - x
        k += 1


def _leading_factors(a: int, p: int, q) -> tuple:
    """Split (q^a; q^p) = prefix * (q^b; q^p) with b > 0; a factor (1 - q^0) is left out."""
    pre = mpmath.mpf(1)
    while a <= 0:
        if a != 0:
            pre *= 1 - q ** a
        a += p
    return pre, a


def _phase_g(M: int, N: int) -> Phase:
    D = M - N
    return Phase(-Fraction(1, D) - Fraction(M * (M - 1), 2 * D * D))


def eval_constants(M: int, N: int, q_value, dps: int = 40) -> dict:
    """g (M > N) or g* (N > M) at a rational q in (0, 1), by two routes."""
    q_value = Fraction(q_value)
    if not 0 < q_value < 1:
        raise ValueError("q must lie in (0, 1)")
    D = M - N
    if D == 0:
        raise ValueError("M = N")
    with mpmath.workdps(dps):
        q = mpmath.mpf(q_value.numerator) / q_value.denominator
        ph = _phase_g(M, N)
        if D > 0:
            name, qexp, (a1, p1), (a2, p2) = "g", Fraction(D - 1, 2), (2, 2 * D), (2 * D, 2 * D)
        else:
            name, qexp, (a1, p1), (a2, p2) = "g*", Fraction(-3 * D - 1, 2), (-2, -2 * D), (-2 * D, -2 * D)
        # (q^a; q^p) with a <= 0 and p | a contains the factor (1 - 1); both
        # routes then run on the product with that factor left out
        degenerate = a1 <= 0 and a1 % p1 == 0
        pre1, b1 = _leading_factors(a1, p1, q)
        pre2, b2 = _leading_factors(a2, p2, q)
        lib = pre1 * mpmath.qp(q ** b1, q ** p1) / (pre2 * mpmath.qp(q ** b2, q ** p2))
        n1, k1, t1 = truncated_poch(b1, p1, q)
        n2, k2, t2 = truncated_poch(b2, p2, q)
        own = pre1 * n1 / (pre2 * n2)
        mag = q ** (mpmath.mpf(qexp.numerator) / qexp.denominator)
        reg = mpmath.expjpi(mpmath.mpf(ph.r.numerator) / ph.r.denominator) * mag * own
        val = mpmath.mpc(0) if degenerate else reg
        rel = abs(lib - own) / abs(lib)
        samples = {}
        X = chi(M, N)
        for x in _SAMPLES[:2]:
            samples[mpmath.nstr(x, 6)] = mpmath.nstr(X.evalf(float(q), x), 15)
        return {
            "name": name, "q": str(q_value), "phase": str(ph.r), "degenerate": degenerate,
            "value": mpmath.nstr(val, 25), "value_mp": val,
            "regularized": mpmath.nstr(reg, 25) if degenerate else None,
            "routes_rel_diff": float(rel), "tail_bound": float(t1 + t2),
            "factors": [k1, k2], "chi": samples,
        }


def gamma_target(M: int, N: int, mu: int, q_value) -> mpmath.mpc:
    """(-1)^{M+N} q^{2 rho_mu} g^-1 (type I) or -(-1)^{M+N} q^{2 rho_mu} (g*)^-1 (type II)."""
    c = eval_constants(M, N, q_value)
    q = mpmath.mpf(Fraction(q_value).numerator) / Fraction(q_value).denominator
    sgn = (-1) ** (M + N) * (1 if M > N else -1)
    return sgn * q ** rho(M, N)[mu - 1] / c["value_mp"]
