"""The normal-ordering rule table and its verification against the boson engine.

A rule states

    A(q^pA u) B(q^pB v) = :A B: * F(u, v)

with F a product of the factors below (y = v/u):

    ("phase", r)            e^{i pi r}
    ("const", c)            rational constant
    ("qpow", k)             q^k
    ("upow", k, e)          (q^k u)^e
    ("lin", c1, c2, e)      (q^c1 u - q^c2 v)^e
    ("poch", a, p, e)       (q^a y; q^p)_inf^e
    ("one_minus", c, e)     (1 - q^c y)^e

Each rule is checked twice: the engine's mode kernel against the closed form
in Qh = q^(m/2) (valid for all m), and the engine's exponentiated series
against an Euler expansion of the stated product through order K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .boson import Contraction, contract_pair, qh_pow
from .catalog import catalog
from .exact import MRat, Phase, QRat, Scalar
from .qproduct import QProduct
from .series import TruncSeries, pochhammer_series

__all__ = ["Rule", "rule_table", "rule_ids", "verify_rule", "rule_product", "contract",
           "stated_kernel", "product_series", "corrected_reading"]

Fr = Fraction


@dataclass(frozen=True)
class Rule:
    rid: str
    left: object
    right: object
    factors: tuple
    pl: Fraction = Fraction(0)
    pr: Fraction = Fraction(0)
    params: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def name(self) -> str:
        extra = ",".join("%s=%s" % kv for kv in sorted(self.params.items()))
        return self.rid + ("[%s]" % extra if extra else "")


# --------------------------------------------------------------------------
# the stated side
# --------------------------------------------------------------------------

def rule_product(rule: Rule) -> tuple:
    """(Scalar in q and u, QProduct in y) for the stated factor list."""
    sc = Scalar()
    qp = QProduct.one()
    for f in rule.factors:
        kind = f[0]
        if kind == "phase":
            sc = sc * Scalar(Phase(f[1]))
        elif kind == "const":
            sc = sc * Scalar(0, QRat(f[1]))
        elif kind == "qpow":
            sc = sc * Scalar(0, 1, {"q": Fr(f[1])})
        elif kind == "upow":
            k, e = Fr(f[1]), Fr(f[2])
            sc = sc * Scalar(0, 1, {"q": k * e, "u": e})
        elif kind == "lin":
            c1, c2, e = f[1], f[2], f[3]
            sc = sc * Scalar(0, 1, {"q": c1 * e, "u": e})
            qp = qp * QProduct.linear(c2 - c1, 1, e)
        elif kind == "poch":
            qp = qp * QProduct.poch(f[1], f[2], 1, f[3])
        elif kind == "one_minus":
            qp = qp * QProduct.linear(f[1], 1, f[2])
        else:
            raise ValueError("unknown factor %r" % (f,))
    return sc, qp


def stated_kernel(qp: QProduct) -> MRat:
    """m times the y^m coefficient of log of a QProduct free of prefactors."""
    if qp.xpow or qp.const or not (qp.coef == Scalar()):
        raise ValueError("product carries a prefactor")
    G = MRat(0)
    for (a, p, d), e in qp.inf.items():
        if d != 1:
            raise ValueError("inverse argument")
        G = G - e * qh_pow(a) / (1 - qh_pow(p))
    for c, e in qp.fin.items():
        G = G - e * qh_pow(c)
    return G


def stated_series(rule: Rule, K: int) -> TruncSeries:
    """Expansion of the printed y-dependent factors, independent of the log form.

    Pochhammer ratios with a common base use the q-binomial theorem, leftover
    Pochhammers the two Euler expansions, and linear factors are applied by
    first-order recurrences.
    """
    nums, dens, lins = [], [], []
    for f in rule.factors:
        if f[0] == "poch":
            (nums if f[3] > 0 else dens).extend([(f[1], f[2])] * abs(f[3]))
        elif f[0] == "lin":
            lins.append((f[2] - f[1], f[3]))
        elif f[0] == "one_minus":
            lins.append((f[1], f[2]))
    return factor_series(nums, dens, lins, K)


def product_series(qp: QProduct, K: int) -> TruncSeries:
    """y-expansion of a prefactor-free QProduct (factors in y only) by the same route."""
    if qp.xpow or qp.const or not (qp.coef == Scalar()):
        raise ValueError("product carries a prefactor")
    nums, dens = [], []
    for (a, p, d), e in qp.inf.items():
        if d != 1:
            raise ValueError("inverse argument")
        (nums if e > 0 else dens).extend([(a, p)] * abs(e))
    return factor_series(nums, dens, list(qp.fin.items()), K)


def factor_series(nums: list, dens: list, lins: list, K: int) -> TruncSeries:
    """prod (q^a y;q^p) / prod (q^b y;q^p) * prod (1 - q^c y)^e through y^K."""
    nums, dens = list(nums), list(dens)
    parts = []
    while nums and dens:
        (a, p), (b, p2) = nums.pop(), dens.pop()
        if p != p2:
            parts.append(pochhammer_series(a, p, K, "y"))
            parts.append(_inverse_euler(b, p2, K))
            continue
        parts.append(_q_binomial(a, b, p, K))
    parts += [pochhammer_series(a, p, K, "y") for a, p in nums]
    parts += [_inverse_euler(b, p, K) for b, p in dens]
    out = TruncSeries([QRat(1)], K, "y")
    for t in parts:
        out = out * t
    cs = list(out.coeffs)
    for c, e in lins:
        qc = QRat.q(c)
        for _ in range(abs(e)):
            if e > 0:
                cs = [cs[0]] + [cs[n] - qc * cs[n - 1] for n in range(1, K + 1)]
            else:
                for n in range(1, K + 1):
                    cs[n] = cs[n] + qc * cs[n - 1]
    return TruncSeries(cs, K, "y")


def _q_binomial(a: int, b: int, p: int, K: int) -> TruncSeries:
    """(q^a y; q^p)_inf / (q^b y; q^p)_inf = sum_n (q^(a-b); q^p)_n / (q^p; q^p)_n q^(b n) y^n."""
    cs, num, den = [QRat(1)], QRat(1), QRat(1)
    for n in range(1, K + 1):
        num = num * (1 - QRat.q(a - b + (n - 1) * p))
        den = den * (1 - QRat.q(n * p))
        cs.append(num / den * QRat.q(b * n))
    return TruncSeries(cs, K, "y")


def _inverse_euler(b: int, p: int, K: int) -> TruncSeries:
    """1 / (q^b y; q^p)_inf = sum_n q^(b n) y^n / (q^p; q^p)_n."""
    cs, den = [QRat(1)], QRat(1)
    for n in range(1, K + 1):
        den = den * (1 - QRat.q(n * p))
        cs.append(QRat.q(b * n) / den)
    return TruncSeries(cs, K, "y")


# --------------------------------------------------------------------------
# engine side
# --------------------------------------------------------------------------

def contract(M: int, N: int, left, right, pl=0, pr=0) -> Contraction:
    cat = catalog(M, N)
    return contract_pair(cat[left].at(pl), cat[right].at(pr), cat.basis)


def verify_rule(M: int, N: int, rule: Rule, K: int = 30) -> dict:
    if K <= 0:
        raise ValueError("K must be positive")
    eng = contract(M, N, rule.left, rule.right, rule.pl, rule.pr)
    sc, qp = rule_product(rule)
    scalar_ok = eng.scalar == sc
    G = stated_kernel(qp)
    kernel_ok = eng.G == G
    got = eng.series(K)
    want = stated_series(rule, K)
    n = got.first_mismatch(want)
    witness = None
    if not (scalar_ok and kernel_ok and n is None):
        witness = {"engine_scalar": eng.scalar.as_dict(), "stated_scalar": sc.as_dict(),
                   "kernel_match": kernel_ok, "first_series_mismatch": n}
        if not kernel_ok:
            witness["kernel_difference"] = repr(eng.G - G)
    return {"rule": rule.name, "scalar": scalar_ok, "kernel": kernel_ok,
            "series": n is None, "ok": scalar_ok and kernel_ok and n is None,
            "witness": witness}


# --------------------------------------------------------------------------
# the table
# --------------------------------------------------------------------------

EPS = (1, -1)


def rule_table(M: int, N: int) -> list:
    """All rules admissible at (M, N), every eps choice and index expanded."""
    if M == N:
        raise ValueError("rules need M != N")
    D = M - N
    P = 2 * abs(D)
    ph = Fr(M * (M - 1), 2 * D * D)
    out = []

    def add(rid, left, right, factors, pl=0, pr=0, **params):
        out.append(Rule(rid, left, right, tuple(factors), Fr(pl), Fr(pr), params))

    e1 = 1 - Fr(1, D)
    # edge operators, type I
    if D > 0:
        add("phistar.phistar", "Phistar", "Phistar",
            [("upow", 1, e1), ("phase", -ph), ("poch", 2, P, 1), ("poch", P, P, -1)])
        add("phistar.phi", "Phistar", "Phi",
            [("upow", 1, Fr(1, D)), ("phase", ph), ("poch", P, P, 1), ("poch", P + 2, P, -1)])
        add("phi.phistar", "Phi", "Phistar",
            [("upow", D + 1, Fr(1, D)), ("phase", ph), ("poch", 0, P, 1), ("poch", 2, P, -1)])
        add("phi.phi", "Phi", "Phi",
            [("upow", D + 1, -Fr(1, D)), ("phase", -ph), ("poch", P + 2, P, 1), ("poch", P, P, -1)])
    else:
        add("phistar.phistar", "Phistar", "Phistar",
            [("upow", 1, e1), ("phase", -ph), ("poch", 0, P, 1), ("poch", 2 + P, P, -1)])
        # printed with the phase factor displayed twice
        add("phistar.phi", "Phistar", "Phi",
            [("phase", ph), ("upow", 1, Fr(1, D)), ("phase", ph), ("poch", 2, P, 1), ("poch", 0, P, -1)])
        add("phi.phistar", "Phi", "Phistar",
            [("upow", D + 1, Fr(1, D)), ("phase", ph), ("poch", P + 2, P, 1), ("poch", P, P, -1)])
        add("phi.phi", "Phi", "Phi",
            [("upow", D + 1, -Fr(1, D)), ("phase", -ph), ("one_minus", 0, 1),
             ("poch", P, P, 1), ("poch", 2, P, -1)])

    # type II
    k2 = -D + 1
    for e in EPS:
        ps = ("Psistar", e)
        if D > 0:
            add("psi.psistar", "Psi", ps,
                [("upow", 1, Fr(1, D)), ("phase", ph), ("poch", -2, P, 1), ("poch", 0, P, -1)], eps=e)
            add("psistar.psi", ps, "Psi",
                [("phase", ph), ("upow", k2, Fr(1, D)), ("poch", P - 2, P, 1), ("poch", P, P, -1)], eps=e)
        else:
            add("psi.psistar", "Psi", ps,
                [("phase", ph), ("upow", 1, Fr(1, D)), ("poch", P, P, 1), ("poch", P - 2, P, -1)], eps=e)
            add("psistar.psi", ps, "Psi",
                [("phase", ph), ("upow", k2, Fr(1, D)), ("poch", 0, P, 1), ("poch", -2, P, -1)], eps=e)
    if D > 0:
        add("psi.psi", "Psi", "Psi",
            [("upow", 1, e1), ("phase", -ph), ("poch", 0, P, 1), ("poch", P - 2, P, -1)])
    else:
        add("psi.psi", "Psi", "Psi",
            [("upow", 1, e1), ("phase", -ph), ("poch", -2, P, 1), ("poch", P, P, -1)])
    for a in EPS:
        for b in EPS:
            tail = [("poch", P, P, 1), ("poch", -2, P, -1)] if D > 0 else \
                   [("poch", P - 2, P, 1), ("poch", 0, P, -1)]
            add("psistar.psistar", ("Psistar", a), ("Psistar", b),
                [("upow", k2, -1 - Fr(1, D)), ("qpow", k2), ("lin", a, b, 1), ("phase", -ph)] + tail,
                eps1=a, eps2=b)

    # mixed type I / type II
    if D > 0:
        mixed = {
            "psi.phi": ("Psi", "Phi", [("phase", -ph), ("upow", 1, -Fr(1, D)), ("poch", P + 1, P, 1), ("poch", P - 1, P, -1)]),
            "phi.psi": ("Phi", "Psi", [("phase", -ph), ("upow", D + 1, -Fr(1, D)), ("poch", 1, P, 1), ("poch", -1, P, -1)]),
            "psi.phistar": ("Psi", "Phistar", [("phase", ph), ("upow", 1, -e1), ("poch", P - 1, P, 1), ("poch", 1, P, -1)]),
            "phistar.psi": ("Phistar", "Psi", [("phase", ph), ("upow", 1, -e1), ("poch", P - 1, P, 1), ("poch", 1, P, -1)]),
        }
        eps_mixed = {
            "psistar.phistar": (True, "Phistar", [("phase", -ph), ("upow", k2, -Fr(1, D)), ("poch", P + 1, P, 1), ("poch", P - 1, P, -1)]),
            "phistar.psistar": (False, "Phistar", [("phase", -ph), ("upow", 1, -Fr(1, D)), ("poch", 1, P, 1), ("poch", -1, P, -1)]),
            "psistar.phi": (True, "Phi", lambda e: [("phase", ph), ("upow", k2, 1 + Fr(1, D)), ("lin", k2 + e, D + 1, -1),
                                                      ("poch", P - 1, P, 1), ("poch", 2 * P + 1, P, -1)]),
            "phi.psistar": (False, "Phi", lambda e: [("phase", ph), ("upow", D + 1, 1 + Fr(1, D)), ("lin", D + 1, k2 + e, -1),
                                                       ("poch", -P - 1, P, 1), ("poch", 1, P, -1)]),
        }
    else:
        mixed = {
            "psi.phi": ("Psi", "Phi", [("phase", -ph), ("upow", 1, -Fr(1, D)), ("poch", -1, P, 1), ("poch", 1, P, -1)]),
            "phi.psi": ("Phi", "Psi", [("phase", -ph), ("upow", D + 1, -Fr(1, D)), ("poch", P - 1, P, 1), ("poch", P + 1, P, -1)]),
            "psi.phistar": ("Psi", "Phistar", [("phase", ph), ("upow", 1, -e1), ("poch", P + 1, P, 1), ("poch", -1, P, -1)]),
            "phistar.psi": ("Phistar", "Psi", [("phase", ph), ("upow", 1, -e1), ("poch", P + 1, P, 1), ("poch", -1, P, -1)]),
        }
        eps_mixed = {
            "psistar.phistar": (True, "Phistar", [("phase", -ph), ("upow", k2, -Fr(1, D)), ("poch", -1, P, 1), ("poch", 1, P, -1)]),
            "phistar.psistar": (False, "Phistar", [("phase", -ph), ("upow", 1, -Fr(1, D)), ("poch", P - 1, P, 1), ("poch", P + 1, P, -1)]),
            "psistar.phi": (True, "Phi", lambda e: [("phase", ph), ("upow", k2, 1 + Fr(1, D)), ("lin", k2 + e, D + 1, -1),
                                                      ("poch", 2 * D + 1, P, 1), ("poch", -1, P, -1)]),
            "phi.psistar": (False, "Phi", lambda e: [("phase", ph), ("upow", D + 1, 1 + Fr(1, D)), ("lin", D + 1, k2 + e, -1),
                                                       ("poch", P + 1, P, 1), ("poch", 2 * P - 1, P, -1)]),
        }
    for rid, (lft, rgt, fac) in mixed.items():
        add(rid, lft, rgt, fac)
    for rid, (star_left, other, fac) in eps_mixed.items():
        for e in EPS:
            f = fac(e) if callable(fac) else fac
            if star_left:
                add(rid, ("Psistar", e), other, f, eps=e)
            else:
                add(rid, other, ("Psistar", e), f, eps=e)

    out.extend(_current_rules(M, N))
    out.extend(_edge_current_rules(M, N))
    return out


def _current_rules(M: int, N: int) -> list:
    out = []

    def add(rid, left, right, factors, **params):
        out.append(Rule(rid, left, right, tuple(factors), Fr(0), Fr(0), params))

    # same-node pairs
    for s, sg in (("+", 1), ("-", -1)):
        for i in range(1, M):
            add("x%s.x%s.i" % (s, s), ("X" + s, i), ("X" + s, i),
                [("const", -1), ("lin", 0, 0, 1), ("lin", 0, -2 * sg, 1)], i=i)
    add("x+.x+.M", ("X+", M), ("X+", M), [("lin", 0, 0, 1)])
    for a in EPS:
        for b in EPS:
            add("x-.x-.M", ("X-", M, a), ("X-", M, b), [("lin", a, b, 1)], eps1=a, eps2=b)
            for s, sg in (("+", 1), ("-", -1)):
                for j in range(1, N):
                    add("x%s.x%s.Mj" % (s, s), ("X" + s, M + j, a), ("X" + s, M + j, b),
                        [("lin", a, b, 1), ("lin", 0, -2 * sg, -1)], j=j, eps1=a, eps2=b)

    # neighbours inside the first block
    for s, sg in (("+", 1), ("-", -1)):
        for i in range(1, M - 1):
            add("x%s.i.i+1" % s, ("X" + s, i), ("X" + s, i + 1), [("lin", 0, -sg, -1)], i=i)
            add("x%s.i+1.i" % s, ("X" + s, i + 1), ("X" + s, i), [("const", -1), ("lin", 0, -sg, -1)], i=i)
    if M >= 2:
        add("x+.M-1.M", ("X+", M - 1), ("X+", M), [("lin", 0, -1, -1)])
        add("x+.M.M-1", ("X+", M), ("X+", M - 1), [("const", -1), ("lin", 0, -1, -1)])
        for e in EPS:
            add("x-.M-1.M", ("X-", M - 1), ("X-", M, e), [("lin", 0, 1, -1)], eps=e)
            add("x-.M.M-1", ("X-", M, e), ("X-", M - 1), [("const", -1), ("lin", 0, 1, -1)], eps=e)
    if N >= 2:
        for e in EPS:
            add("x+.M.M+1", ("X+", M), ("X+", M + 1, e), [("lin", 0, -1, 1), ("lin", 0, e, -1)], eps=e)
            add("x+.M+1.M", ("X+", M + 1, e), ("X+", M), [("lin", 0, -1, 1), ("lin", e, 0, -1)], eps=e)
        for a in EPS:
            for b in EPS:
                add("x-.M.M+1", ("X-", M, a), ("X-", M + 1, b), [("lin", 0, 1, 1), ("lin", a, 0, -1)], eps1=a, eps2=b)
                add("x-.M+1.M", ("X-", M + 1, a), ("X-", M, b), [("lin", 0, 1, 1), ("lin", 0, b, -1)], eps1=a, eps2=b)
                for j in range(1, N - 1):
                    add("x+.Mj.Mj+1", ("X+", M + j, a), ("X+", M + j + 1, b),
                        [("lin", 0, -1, 1), ("lin", 0, b, -1)], j=j, eps1=a, eps2=b)
                    add("x+.Mj+1.Mj", ("X+", M + j + 1, a), ("X+", M + j, b),
                        [("lin", 0, -1, 1), ("lin", a, 0, -1)], j=j, eps1=a, eps2=b)
                    add("x-.Mj.Mj+1", ("X-", M + j, a), ("X-", M + j + 1, b),
                        [("lin", 0, 1, 1), ("lin", a, 0, -1)], j=j, eps1=a, eps2=b)
                    add("x-.Mj+1.Mj", ("X-", M + j + 1, a), ("X-", M + j, b),
                        [("lin", 0, 1, 1), ("lin", 0, b, -1)], j=j, eps1=a, eps2=b)
    return out


def _edge_current_rules(M: int, N: int) -> list:
    """Vertex operator against a current, at the points used for the chains."""
    D = M - N
    out = []

    def add(rid, left, right, factors, pl=0, pr=0, **params):
        out.append(Rule(rid, left, right, tuple(factors), Fr(pl), Fr(pr), params))

    if M == 1:
        for e in EPS:
            add("phistar.x-1", "Phistar", ("X-", 1, e), [("lin", 0, 1, -1)], pl=-1, eps=e)
            add("x-1.phistar", ("X-", 1, e), "Phistar", [("lin", 0, 1, -1)], pr=-1, eps=e)
        add("psi.x+1", "Psi", ("X+", 1), [("lin", 0, -1, -1)], pl=-1)
        add("x+1.psi", ("X+", 1), "Psi", [("lin", 0, -1, -1)], pr=-1)
    else:
        r1, rM = Fr(1, D), Fr(1 - M, D)
        add("phistar.x-1", "Phistar", ("X-", 1), [("phase", r1), ("lin", 0, 1, -1)], pl=-1)
        add("x-1.phistar", ("X-", 1), "Phistar", [("phase", r1), ("const", -1), ("lin", 0, 1, -1)], pr=-1)
        for e in EPS:
            add("phistar.x-M", "Phistar", ("X-", M, e), [("phase", rM)], pl=-1, eps=e)
            add("x-M.phistar", ("X-", M, e), "Phistar", [("const", -1), ("phase", rM)], pr=-1, eps=e)
        add("psi.x+1", "Psi", ("X+", 1), [("phase", r1), ("lin", 0, -1, -1)], pl=-1)
        add("x+1.psi", ("X+", 1), "Psi", [("phase", r1), ("const", -1), ("lin", 0, -1, -1)], pr=-1)
        add("psi.x+M", "Psi", ("X+", M), [("phase", rM)], pl=-1)
        add("x+M.psi", ("X+", M), "Psi", [("const", -1), ("phase", rM)], pr=-1)

    top = M + N - 1
    if N == 1:
        for e in EPS:
            add("phi.x-M", "Phi", ("X-", M, e), [("const", -1), ("lin", 0, 1, 1), ("lin", 0, e, -1)], pl=-M, eps=e)
            add("x-M.phi", ("X-", M, e), "Phi", [("lin", 0, 1, 1), ("lin", e, 0, -1)], pr=-M, eps=e)
            add("psistar.x+M", ("Psistar", e), ("X+", M), [("const", -1), ("lin", 0, -1, 1), ("lin", e, 0, -1)], pl=M - 2, eps=e)
            add("x+M.psistar", ("X+", M), ("Psistar", e), [("lin", 0, -1, 1), ("lin", 0, e, -1)], pr=M - 2, eps=e)
    else:
        rr = Fr(M - 1, D)
        for e in EPS:
            add("phi.x-top", "Phi", ("X-", top, e), [("const", -1), ("lin", 0, 1, 1), ("lin", 0, e, -1)], pl=-M + N - 1, eps=e)
            add("x-top.phi", ("X-", top, e), "Phi", [("lin", 0, 1, 1), ("lin", e, 0, -1)], pr=-M + N - 1, eps=e)
            add("phi.x-M", "Phi", ("X-", M, e), [("phase", rr)], eps=e)
            add("x-M.phi", ("X-", M, e), "Phi", [("phase", rr)], eps=e)
            add("psistar.x+M", ("Psistar", e), ("X+", M), [("phase", rr)], eps=e)
            add("x+M.psistar", ("X+", M), ("Psistar", e), [("phase", rr)], eps=e)
        for a in EPS:
            for b in EPS:
                add("psistar.x+top", ("Psistar", a), ("X+", top, b), [("lin", 0, -1, 1), ("lin", a, 0, -1)],
                    pl=M - N - 1, eps1=a, eps2=b)
                add("x+top.psistar", ("X+", top, a), ("Psistar", b), [("const", -1), ("lin", 0, -1, 1), ("lin", 0, a, -1)],
                    pr=M - N - 1, eps1=a, eps2=b)
    return out


def rule_ids(M: int, N: int) -> list:
    return sorted({r.rid for r in rule_table(M, N)})


def corrected_reading(rule: Rule):
    """Alternative factor list for a rule whose stated pole sits on the wrong eps.

    Only x+top.psistar has one: the pole of X^+(w) Psi*_e2 follows the eps
    of Psi*, as it does in the opposite ordering.  Returns None otherwise.
    """
    if rule.rid != "x+top.psistar" or rule.params["eps1"] == rule.params["eps2"]:
        return None
    pole = ("lin", 0, rule.params["eps1"], -1)
    facs = tuple(("lin", 0, rule.params["eps2"], -1) if f == pole else f for f in rule.factors)
    return Rule(rule.rid, rule.left, rule.right, facs, rule.pl, rule.pr, rule.params)
