"""Coefficients of the integral representations and the F_mu identities."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .weak import Num, Sym, cprod

__all__ = ["IntegralCoeffs", "build_F_mu", "check_F_mu", "F_MUTATIONS", "fmu_terms"]


@dataclass(frozen=True)
class IntegralCoeffs:
    """Constants and kernel denominators of the four integral representations.

    Methods taking `q` accept an MRat generator or a rational value; kernel
    methods take an evaluation context (`Sym` or `Num`).
    """

    M: int
    N: int

    def _check(self, mu):
        if not 1 <= mu <= self.M + self.N:
            raise ValueError("mu out of range")

    def c(self, mu, q):
        self._check(mu)
        M, N, h = self.M, self.N, q - 1 / q
        if mu <= M:
            return (-1) ** (M + N - mu - 1) * q ** (M - mu) * h ** (M + N - mu)
        return (-1) ** (M + N - mu) * h ** (M + N - mu)

    def cstar(self, mu, q):
        self._check(mu)
        h = q - 1 / q
        if mu <= self.M:
            return h ** (mu - 1)
        return h ** (mu - 1) * q ** (mu - self.M - 1)

    def d(self, mu, q):
        self._check(mu)
        h = q - 1 / q
        if mu <= self.M:
            return (-1) ** (mu - 1) * q ** (mu - 1) * h ** (mu - 1)
        return (-1) ** self.M * q ** self.M * h ** (mu - 1)

    def dstar(self, mu, q):
        self._check(mu)
        M, N, h = self.M, self.N, q - 1 / q
        if mu <= M:
            return (-1) ** (N - 1) * q ** (-N + 2 + 2 * (M - mu)) * h ** (M + N - mu)
        return (-1) ** (M + N - mu) * q ** (-M - N + mu) * h ** (M + N - mu)

    # kernel denominators ------------------------------------------------------
    def kernel(self, kind: str, mu: int, ctx):
        self._check(mu)
        M, N, q, w = self.M, self.N, ctx.q, ctx.w
        r = range
        if kind == "phistar":
            f = [1 - q * w(j) / w(j + 1) for j in r(0, min(mu - 1, M))]
            f += [q - w(j) / w(j + 1) for j in r(M, mu - 1)]
        elif kind == "phi":
            if mu <= M - 1:
                f = [q - w(j + 1) / w(j) for j in r(mu, M)] + [1 - q * w(j + 1) / w(j) for j in r(M, M + N)]
            else:
                f = [1 - q * w(j + 1) / w(j) for j in r(mu, M + N)]
        elif kind == "psi":
            f = [1 - q * w(j + 1) / w(j) for j in r(0, min(mu - 1, M))]
            f += [q - w(j + 1) / w(j) for j in r(M, mu - 1)]
        elif kind == "psistar":
            if mu <= M:
                f = [q - w(j) / w(j + 1) for j in r(mu, M)] + [1 - q * w(j) / w(j + 1) for j in r(M, M + N)]
            else:
                f = [1 - q * w(j) / w(j + 1) for j in r(mu, M + N)]
        else:
            raise KeyError(kind)
        return cprod(ctx, f)

    @staticmethod
    def D(w1, w1p, w2, w2p, q):
        return (1 - q * w1 / w2) * (1 - q * w1 / w2p) * (1 - q * w1p / w2) * (1 - q * w1p / w2p)

    @staticmethod
    def Dbar(w1, w1p, w2, w2p, q):
        return ((1 - w1 / (q * w2)) * (1 - w1 / (q * w2p))
                * (1 - w1p / (q * w2)) * (1 - w1p / (q * w2p)))


def _abc(z, q):
    den = 1 - q * q * z
    return (z - q * q) / den, q * (1 - z) / den, (1 - q * q) / den


F_MUTATIONS = ("a", "b", "lead", "low", "mid", "high")


def fmu_terms(M: int, N: int, mu: int, ctx) -> dict:
    """The named summands of F_mu; terms that are empty sums are omitted."""
    if not 1 <= mu <= M + N:
        raise ValueError("mu out of range")
    ic = IntegralCoeffs(M, N)
    q, w = ctx.q, ctx.w
    zeta = q ** (N - M) * w(M + N) / w(0)
    a, b, c = _abc(zeta, q)

    def cc(nu):
        return ic.c(nu, q) * ic.cstar(nu, q)

    even = lambda nu: cc(nu) * (-1) ** (nu - 1) * (q * w(nu - 1) - w(nu))
    t = {}
    if mu <= M:
        t["b"] = cc(mu) * (-1) ** (mu - 1) * b * (w(mu - 1) - q * w(mu))
        t["lead"] = -cc(mu) * (-1) ** (mu - 1) * (q * w(mu - 1) - w(mu))
        if mu > 1:
            t["low"] = -zeta * c * sum((even(nu) for nu in range(1, mu)), 0 * ctx.one)
        if mu < M:
            t["mid"] = -c * sum((even(nu) for nu in range(mu + 1, M + 1)), 0 * ctx.one)
        t["high"] = -c * sum((cc(nu) * (-1) ** nu * (w(nu - 1) - q * w(nu))
                              for nu in range(M + 1, M + N + 1)), 0 * ctx.one)
    else:
        t["b"] = (-1) ** mu * cc(mu) * b * (q * w(mu - 1) - w(mu))
        t["a"] = (-1) ** mu * cc(mu) * a * (w(mu - 1) - q * w(mu))
        t["low"] = zeta * c * sum((even(nu) for nu in range(1, M + 1)), 0 * ctx.one)
        if mu > M + 1:
            t["mid"] = -zeta * c * sum((cc(nu) * (-1) ** (nu - 1) * (w(nu - 1) - q * w(nu))
                                        for nu in range(M + 1, mu)), 0 * ctx.one)
        if mu < M + N:
            t["high"] = -c * sum((cc(nu) * (-1) ** (nu - 1) * (w(nu - 1) - q * w(nu))
                                  for nu in range(mu + 1, M + N + 1)), 0 * ctx.one)
    return t


def build_F_mu(M: int, N: int, mu: int, drop: str | None = None, ctx=None):
    ctx = ctx or Sym()
    t = fmu_terms(M, N, mu, ctx)
    if drop is not None and drop not in t:
        raise KeyError("no term %r in F_%d" % (drop, mu))
    return sum((v for k, v in t.items() if k != drop), 0 * ctx.one)


def check_F_mu(M: int, N: int, mu: int, mutations: bool = True) -> dict:
    """F_mu must vanish identically; each single-term deletion must not."""
    t0 = time.perf_counter()
    if M == N:
        raise ValueError("M = N")
    F = build_F_mu(M, N, mu)
    ok = F.is_zero()
    # independent route: exact evaluation at a rational point
    vals = {"q": Fraction(3, 7)}
    for j in range(M + N + 1):
        vals["w%d" % j] = Fraction(2 * j + 3, j + 2)
    num = build_F_mu(M, N, mu, ctx=Num(vals))
    controls = {}
    if mutations:
        for k in fmu_terms(M, N, mu, Sym()):
            controls[k] = not build_F_mu(M, N, mu, drop=k).is_zero()
    good = ok and num == 0 and all(controls.values())
    witness = None
    if not good:
        witness = {"F": repr(F)[:300], "numeric": str(num),
                   "controls_caught": controls}
    return {"check": "fmu", "params": {"M": M, "N": N, "mu": mu},
            "status": "pass" if good else "fail", "witness": witness,
            "controls": controls, "ms": round(1000 * (time.perf_counter() - t0), 1)}
