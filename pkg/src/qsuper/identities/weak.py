"""Exchange weights H_j and the weak-equality symmetrizer.

Two evaluation routes share the same builders:

* `Sym` evaluates a builder to an exact MRat and symmetrizes it with
  `MRat.swap`;
* `Num` evaluates the builder at rational points.  The symmetrized value is
  the sum over subsets T of the pairs of prod_{j in T} H_j times the builder
  evaluated with the pairs in T exchanged, so no MRat arithmetic is involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from ..exact import MRat

__all__ = [
    "VarPair", "HFactor", "Sym", "Num", "WeakIdentity", "weak_symmetrize",
    "weak_equal", "numeric_symmetrized", "spot_check", "sector",
]


def sector(j: int, M: int, N: int) -> str:
    """'even' (j < M), 'boundary' (j = M) or 'odd' (M < j < M+N)."""
    if 1 <= j <= M - 1:
        return "even"
    if j == M:
        return "boundary"
    if M + 1 <= j <= M + N - 1:
        return "odd"
    raise ValueError("pair index %d outside 1..%d" % (j, M + N - 1))


@dataclass(frozen=True)
class VarPair:
    j: int
    M: int
    N: int

    @property
    def base(self) -> str:
        return "w%d" % self.j

    @property
    def partner(self) -> str:
        return "w%dp" % self.j

    @property
    def sector(self) -> str:
        return sector(self.j, self.M, self.N)


@dataclass(frozen=True)
class HFactor:
    """H_j^{sign,(M|N)}(w_j', w_j); M = 0 or N = 0 is allowed."""

    j: int
    sign: str
    M: int
    N: int

    def __post_init__(self):
        if self.sign not in "+-" or len(self.sign) != 1:
            raise ValueError("sign must be '+' or '-'")
        sector(self.j, self.M, self.N)

    def value(self, w, wp, q):
        s = q ** 2 if self.sign == "+" else q ** -2
        sec = sector(self.j, self.M, self.N)
        if sec == "even":
            return -(w - s * wp) / (wp - s * w)
        if sec == "boundary":
            return -1 + 0 * q
        return -(wp - s * w) / (w - s * wp)

    def mrat(self) -> MRat:
        return self.value(MRat.var("w%d" % self.j), MRat.var("w%dp" % self.j), MRat.var("q"))


# --------------------------------------------------------------------------
# evaluation contexts
# --------------------------------------------------------------------------

class Sym:
    """Symbolic context: variables are MRat generators."""

    def __init__(self):
        self.q = MRat.var("q")
        self.one = MRat(1)

    def w(self, j: int) -> MRat:
        return MRat.var("w%d" % j)

    def wp(self, j: int) -> MRat:
        return MRat.var("w%dp" % j)


class Num:
    """Numeric context over Fractions; `values` maps variable names to rationals."""

    def __init__(self, values: dict):
        self.values = values
        self.q = values["q"]
        self.one = Fraction(1)

    def w(self, j: int) -> Fraction:
        return self.values["w%d" % j]

    def wp(self, j: int) -> Fraction:
        return self.values["w%dp" % j]

    def swapped(self, js) -> "Num":
        v = dict(self.values)
        for j in js:
            a, b = "w%d" % j, "w%dp" % j
            v[a], v[b] = v[b], v[a]
        return Num(v)


def cprod(ctx, factors):
    out = ctx.one
    for f in factors:
        out = out * f
    return out


# --------------------------------------------------------------------------
# weak equality
# --------------------------------------------------------------------------

@dataclass
class WeakIdentity:
    """lhs ~ rhs with respect to the listed pairs.

    `build(ctx)` returns (lhs, rhs) in any context; `provenance` records the
    proposition id, parameters and reading.
    """

    build: Callable
    pairs: tuple
    M: int
    N: int
    sign: str = "-"
    provenance: dict = field(default_factory=dict)

    def sides(self) -> tuple:
        return self.build(Sym())

    def hfactors(self) -> list:
        return [HFactor(j, self.sign, self.M, self.N) for j in self.pairs]


def _check_pairs(pairs) -> list:
    js = [p.j if isinstance(p, VarPair) else int(p) for p in pairs]
    if len(set(js)) != len(js):
        raise ValueError("overlapping pairs: %s" % js)
    return js


def weak_symmetrize(F: MRat, pairs, sign: str, M: int, N: int) -> MRat:
    """prod_j (1 + H_j swap_j) applied to F, one pair at a time."""
    for j in _check_pairs(pairs):
        H = HFactor(j, sign, M, N).mrat()
        F = F + H * F.swap("w%d" % j, "w%dp" % j)
    return F


def numeric_symmetrized(build: Callable, values: dict, pairs, sign: str, M: int, N: int) -> Fraction:
    """Symmetrized lhs - rhs at one rational point, by summing over swap subsets."""
    js = _check_pairs(pairs)
    base = Num(values)
    Hs = {j: HFactor(j, sign, M, N).value(base.w(j), base.wp(j), base.q) for j in js}
    tot = Fraction(0)
    for r in range(len(js) + 1):
        for T in combinations(js, r):
            l, rr = build(base.swapped(T))
            w = Fraction(1)
            for j in T:
                w *= Hs[j]
            tot += w * (l - rr)
    return tot


def _random_values(rng: random.Random, names) -> dict:
    def r():
        while True:
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 13))
            if x not in (0, 1, -1):
                return x
    return {n: r() for n in names}


def spot_check(ident: WeakIdentity, samples: int = 100, seed: int = 0, names=None) -> dict:
    """Randomized evaluation of the symmetrized difference; poles are resampled."""
    rng = random.Random(seed)
    if names is None:
        l, r = ident.sides()
        names = sorted((l.variables() | r.variables() | {"q"}))
        for j in ident.pairs:
            names += [n for n in ("w%d" % j, "w%dp" % j) if n not in names]
    done, tries = 0, 0
    while done < samples:
        tries += 1
        if tries > 20 * samples:
            raise RuntimeError("too many poles while sampling")
        vals = _random_values(rng, names)
        try:
            v = numeric_symmetrized(ident.build, vals, ident.pairs, ident.sign, ident.M, ident.N)
        except ZeroDivisionError:
            continue
        done += 1
        if v != 0:
            return {"ok": False, "samples": done, "point": {k: str(x) for k, x in vals.items()},
                    "value": str(v)}
    return {"ok": True, "samples": done}


def weak_equal(lhs: MRat, rhs: MRat, pairs, sign: str, M: int, N: int) -> bool:
    return weak_symmetrize(lhs - rhs, pairs, sign, M, N).is_zero()
