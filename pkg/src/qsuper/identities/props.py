"""Builders for the weak-equality propositions and their checker.

Each builder takes an evaluation context (`Sym` or `Num`) and returns
(lhs, rhs).  Where a displayed formula admits more than one reading, every
reading is built.  The first reading listed for a relation is the resolved
one and decides the status; "printed" is always among the readings and its
outcome is reported next to it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .weak import WeakIdentity, cprod, spot_check, weak_symmetrize

__all__ = ["PROPS", "Instance", "instances", "check_prop", "check_instance",
           "admissible", "D_mu", "grid", "all_instances"]

PROPS = ("1", "2", "3", "5prime", "5", "6", "7")


# --------------------------------------------------------------------------
# shared factors
# --------------------------------------------------------------------------

def _p2(c, M, mu, nu):
    q, w, wp = c.q, c.w, c.wp
    return cprod(c, [(q * w(j) - wp(j + 1)) * (wp(j) - q * w(j + 1)) for j in range(mu, M)]
                 + [(w(j) - q * wp(j + 1)) * (q * wp(j) - w(j + 1)) for j in range(M, nu - 1)])


def D_mu(c, M, mu, swap0=False):
    """D_mu^{(M|N)}(w0, w0', w1, w1', ...); swap0 exchanges the first two slots.

    The (M|N), (M|0) and (0|N) forms are one formula: the first product runs
    over j <= min(mu-2, M-1), the second over M <= j <= mu-2.
    """
    q = c.q

    def v(j):
        return c.wp(0) if (j == 0 and swap0) else c.w(j)

    def vp(j):
        return c.w(0) if (j == 0 and swap0) else c.wp(j)

    return cprod(c, [(vp(j) - q * v(j + 1)) * (vp(j + 1) - q * v(j)) for j in range(0, min(mu - 1, M))]
                 + [(q * vp(j) - v(j + 1)) * (q * vp(j + 1) - v(j)) for j in range(M, mu - 1)])


def _b(c, x):
    q = c.q
    return q * (1 - x) / (1 - q * q * x)


def _c(c, x):
    q = c.q
    return (1 - q * q) / (1 - q * q * x)


def _bbar(c, x):
    q = c.q
    return q * (1 - x) / (q * q - x)


def _cbar(c, x):
    q = c.q
    return (q * q - 1) / (q * q - x)


def _E(c, j):
    q, w, wp = c.q, c.w, c.wp
    return (q * w(j + 1) - wp(j)) * (wp(j + 1) - q * w(j))


def _O(c, j):
    q, w, wp = c.q, c.w, c.wp
    return (w(j + 1) - q * wp(j)) * (q * wp(j + 1) - w(j))


# --------------------------------------------------------------------------
# builders
# --------------------------------------------------------------------------

def _prop1(form, M, mu, nu, reading):
    def build(c):
        q, w, wp = c.q, c.w, c.wp
        if form == "1":
            P = _p2(c, M, mu, nu)
            return ((q * w(mu) - w(mu - 1)) * P * (w(nu) - q * wp(nu - 1)),
                    -(wp(mu) - q * w(mu - 1)) * P * (q * w(nu) - w(nu - 1)))
        if form == "2":
            P = cprod(c, [(q * w(j + 1) - wp(j)) * (wp(j + 1) - q * w(j)) for j in range(mu, nu - 1)])
            return ((q * w(mu) - w(mu - 1)) * P * (q * w(nu) - wp(nu - 1)),
                    (wp(mu) - q * w(mu - 1)) * P * (w(nu) - q * w(nu - 1)))
        k = q if reading == "printed" else 1
        PL = cprod(c, [(w(j) - q * wp(j + 1)) * (q * wp(j) - k * w(j + 1)) for j in range(mu, nu - 1)])
        PR = cprod(c, [(w(j) - q * wp(j + 1)) * (q * wp(j) - w(j + 1)) for j in range(mu, nu - 1)])
        return ((w(mu) - q * w(mu - 1)) * PL * (w(nu) - q * wp(nu - 1)),
                (q * wp(mu) - w(mu - 1)) * PR * (q * w(nu) - w(nu - 1)))
    return build


def _prop2(M, mu, nu):
    return lambda c: (_p2(c, M, mu, nu), 0 * c.one)


def _prop3(M, mu, nu, rel):
    def build(c):
        q, w, wp = c.q, c.w, c.wp
        PL = cprod(c, [(q * w(j) - wp(j + 1)) * (wp(j) - q * w(j + 1)) for j in range(mu, M - 1)])
        PR = cprod(c, [(w(j) - q * wp(j + 1)) * (q * wp(j) - w(j + 1)) for j in range(M + 1, nu - 1)])
        SL = cprod(c, [(wp(j) - q * q * w(j)) * (w(j) - wp(j)) for j in range(mu, M)]) / 2 ** (M - mu)
        SR = cprod(c, [(w(j) - q * q * wp(j)) * (wp(j) - w(j)) for j in range(M + 1, nu)]) / 2 ** (nu - M - 1)
        aL = (wp(mu) - q * q * w(mu)) * PL
        bL = PL * (wp(M - 1) - q * q * w(M - 1))
        aR = PR * (w(nu - 1) - q * q * wp(nu - 1))
        bR = (w(M + 1) - q * q * wp(M + 1)) * PR
        z = 0 * c.one
        table = {
            "L1": (aL, z), "L2": (aL * w(M - 1), SL), "L3": (aL * wp(M - 1), -SL),
            "L4": (bL, z), "L5": (w(mu) * bL, SL), "L6": (wp(mu) * bL, -SL),
            "R1": (aR, z), "R2": (w(M + 1) * aR, -SR), "R3": (wp(M + 1) * aR, SR),
            "R4": (bR, z), "R5": (bR * w(nu - 1), -SR), "R6": (bR * wp(nu - 1), SR),
        }
        return table[rel]
    return build


def _prop5(M, mu, factor, reading):
    def build(c):
        q = c.q
        lhs = D_mu(c, M, mu, swap0=True)
        rhs = D_mu(c, M, mu, swap0=(reading == "printed"))
        if factor:
            s = -1 if reading == "sign" else 1
            rhs = s * (q * q * c.wp(0) - c.w(0)) / (c.wp(0) - q * q * c.w(0)) * rhs
        return lhs, rhs
    return build


def _prop6(M, mu, reading):
    def build(c):
        q, w, wp = c.q, c.w, c.wp
        x = wp(0) / w(0)
        b, cc = _b(c, x), _c(c, x)
        if mu == 1:
            A = wp(1) - q * w(0)
            B = -b * (q * wp(1) - w(0))
            C = -cc * (wp(1) - q * wp(0))
        elif mu <= M:
            head = (q * w(1) - w(0)) * (wp(1) - q * wp(0))
            mid = cprod(c, [_E(c, j) for j in range(1, mu - 1)])
            A = cprod(c, [_E(c, j) for j in range(0, mu - 1)]) * (wp(mu) - q * w(mu - 1))
            B = -b * head * mid * (q * wp(mu) - wp(mu - 1))
            C = -cc * head * mid * (wp(mu) - q * w(mu - 1))
        else:
            head = (q * w(1) - w(0)) * (wp(1) - q * wp(0))
            odd = cprod(c, [_O(c, j) for j in range(M, mu - 1)])
            A = cprod(c, [_E(c, j) for j in range(0, M)]) * odd * (q * wp(mu) - w(mu - 1))
            B = b * head * cprod(c, [_E(c, j) for j in range(1, M)]) * odd * (wp(mu) - q * wp(mu - 1))
            top = mu - 1 if reading == "printed" else M
            C = -cc * head * cprod(c, [_E(c, j) for j in range(1, top)]) * odd * (q * wp(mu) - w(mu - 1))
        return A + B + C, 0 * c.one
    return build


def _prop7(mu, reading):
    def build(c):
        q, w, wp = c.q, c.w, c.wp
        x = wp(0) / w(0)
        b, cc = _bbar(c, x), _cbar(c, x)
        if mu == 1:
            s = 1 if reading == "printed" else -1
            A = q * wp(1) - w(0)
            B = s * b * (wp(1) - q * w(0))
            C = s * cc * (q * wp(1) - wp(0))
        else:
            head = (w(1) - q * w(0)) * (q * wp(1) - wp(0))
            mid = cprod(c, [_O(c, j) for j in range(1, mu - 1)])
            A = cprod(c, [_O(c, j) for j in range(0, mu - 1)]) * (q * wp(mu) - w(mu - 1))
            B = -b * head * mid * (wp(mu) - q * wp(mu - 1))
            C = -cc * head * mid * (q * wp(mu) - w(mu - 1))
        return A + B + C, 0 * c.one
    return build


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------

@dataclass
class Instance:
    """One admissible parameter choice of a proposition, with all its readings."""

    prop: str
    M: int
    N: int
    mu: int
    nu: int | None
    relations: dict          # relation label -> {reading: WeakIdentity}, resolved reading first

    @property
    def params(self) -> dict:
        p = {"prop": self.prop, "M": self.M, "N": self.N, "mu": self.mu}
        if self.nu is not None:
            p["nu"] = self.nu
        return p


def _wi(build, pairs, M, N, **prov):
    return WeakIdentity(build, tuple(pairs), M, N, "-", prov)


def admissible(prop: str, M: int, N: int) -> list:
    """All (mu, nu) for the proposition at (M|N); nu is None for mu-only families."""
    if prop == "1":
        out = [(mu, nu) for mu in range(1, M + 1) for nu in range(M + 1, M + N + 1)]
        out += [(mu, nu) for mu in range(1, M + 1) for nu in range(mu + 1, M + 1)]
        out += [(mu, nu) for mu in range(M + 1, M + N + 1) for nu in range(mu + 1, M + N + 1)]
        return out
    if prop == "2":
        return [(mu, nu) for mu in range(1, M + 1) for nu in range(M + 1, M + N + 1)]
    if prop == "3":
        return [(mu, nu) for mu in range(1, M) for nu in range(M + 2, M + N + 1)]
    if prop == "5prime":
        if (M == 0) == (N == 0):
            raise ValueError("Prop 5' lives on (M|0) or (0|N)")
        return [(mu, None) for mu in range(2, M + N + 1)] if M + N >= 2 else []
    if prop == "5":
        return [(mu, None) for mu in range(2, M + N + 1)]
    if prop == "6":
        return [(mu, None) for mu in range(1, M + N)]
    if prop == "7":
        if M != 0 or N < 2:
            raise ValueError("Prop 7 lives on (0|N) with N >= 2")
        return [(mu, None) for mu in range(1, N)]
    raise ValueError("unknown proposition %r" % prop)


def _validate(prop, M, N, mu, nu):
    if prop in ("5prime", "7"):
        if M < 0 or N < 0:
            raise ValueError("M, N must be non-negative")
    elif M < 1 or N < 1:
        raise ValueError("M, N must be positive")
    if (mu, nu) not in admissible(prop, M, N):
        raise ValueError("(mu, nu) = (%s, %s) out of range for prop %s at (%d|%d)" % (mu, nu, prop, M, N))


def instances(prop: str, M: int, N: int, mu: int, nu: int | None = None) -> Instance:
    _validate(prop, M, N, mu, nu)
    rel = {}
    if prop == "1":
        form = "1" if mu <= M < nu else ("2" if nu <= M else "3")
        pairs = range(mu, nu)
        readings = ("corrected", "printed") if form == "3" else ("printed",)
        rel["1:" + form] = {r: _wi(_prop1(form, M, mu, nu, r), pairs, M, N, form=form, reading=r)
                            for r in readings}
    elif prop == "2":
        rel["2"] = {"printed": _wi(_prop2(M, mu, nu), range(mu, nu), M, N)}
    elif prop == "3":
        for side in "LR":
            pairs = range(mu, M) if side == "L" else range(M + 1, nu)
            for k in range(1, 7):
                lab = "%s%d" % (side, k)
                rel[lab] = {"printed": _wi(_prop3(M, mu, nu, lab), pairs, M, N, rel=lab)}
    elif prop in ("5prime", "5"):
        factor = prop == "5" and mu >= M + 1
        pairs = range(1, mu)
        readings = ("sign", "swapped", "printed") if factor else ("swapped", "printed")
        rel[prop] = {r: _wi(_prop5(M, mu, factor, r), pairs, M, N, reading=r) for r in readings}
    elif prop == "6":
        readings = ("range", "printed") if mu >= M + 2 else ("printed",)
        rel["6"] = {r: _wi(_prop6(M, mu, r), range(1, mu), M, N, reading=r) for r in readings}
    elif prop == "7":
        readings = ("signs", "printed") if mu == 1 else ("printed",)
        rel["7"] = {r: _wi(_prop7(mu, r), range(1, mu), M, N, reading=r) for r in readings}
    return Instance(prop, M, N, mu, nu, rel)


def _names(ident: WeakIdentity) -> list:
    top = ident.M + ident.N + 1
    return ["q"] + ["w%d" % j for j in range(top)] + ["w%dp" % j for j in range(top)]


def verify_identity(ident: WeakIdentity, samples: int = 100, seed: int = 0) -> dict:
    lhs, rhs = ident.sides()
    S = weak_symmetrize(lhs - rhs, ident.pairs, ident.sign, ident.M, ident.N)
    exact = S.is_zero()
    num = spot_check(ident, samples, seed, names=_names(ident)) if samples else {"ok": None}
    out = {"exact": exact, "numeric": num["ok"]}
    if not exact:
        out["witness"] = {"symmetrized": repr(S)[:400]}
    if num.get("ok") is False:
        out.setdefault("witness", {})["sample"] = {"point": num["point"], "value": num["value"]}
    return out


# readings that count as the statement itself; "swapped" is the other
# argument order of the 5/5' display, which the text leaves ambiguous
STATED = ("printed", "swapped")


def check_instance(inst: Instance, samples: int = 100, seed: int = 0) -> dict:
    """Status follows the stated readings; the first listed reading is the resolved one."""
    t0 = time.perf_counter()
    results, stated_ok, resolved_ok, agree, witness = {}, True, True, True, None
    for lab, readings in inst.relations.items():
        per = {r: verify_identity(ident, samples, seed) for r, ident in readings.items()}
        results[lab] = per
        good = lambda r: per[r]["exact"] and per[r]["numeric"] is not False
        key = next(iter(per))
        holds = [r for r in per if r in STATED and good(r)]
        resolved_ok = resolved_ok and good(key)
        agree = agree and all(v["numeric"] in (None, v["exact"]) for v in per.values())
        if not holds and witness is None:
            witness = {"relation": lab, "reading": "printed",
                       **per["printed"].get("witness", {}),
                       "holds_under": [r for r in per if good(r)] or None}
        stated_ok = stated_ok and bool(holds)
    return {"check": "weakeq.prop%s" % inst.prop, "params": inst.params,
            "status": "pass" if stated_ok and agree else "fail", "witness": witness,
            "resolved_ok": resolved_ok, "routes_agree": agree,
            "readings": {lab: {r: {"exact": v["exact"], "numeric": v["numeric"]} for r, v in per.items()}
                         for lab, per in results.items()},
            "ms": round(1000 * (time.perf_counter() - t0), 1)}


def check_prop(prop: str, M: int, N: int, mu: int, nu: int | None = None,
               samples: int = 100, seed: int = 0) -> dict:
    return check_instance(instances(prop, M, N, mu, nu), samples, seed)


def grid(max_mn: int = 5) -> list:
    return [(M, N) for s in range(3, max_mn + 1) for M in range(1, s) for N in [s - M] if M != N]


def all_instances(max_mn: int = 5) -> list:
    """Every admissible instance with M + N <= max_mn (5' and 7 on (M|0), (0|N))."""
    out = []
    for prop in ("1", "2", "3", "5", "6"):
        for M, N in grid(max_mn):
            for mu, nu in admissible(prop, M, N):
                out.append((prop, M, N, mu, nu))
    for K in range(2, max_mn):
        for mu, nu in admissible("5prime", K, 0):
            out.append(("5prime", K, 0, mu, nu))
        for mu, nu in admissible("5prime", 0, K):
            out.append(("5prime", 0, K, mu, nu))
        for mu, nu in admissible("7", 0, K):
            out.append(("7", 0, K, mu, nu))
    return out
