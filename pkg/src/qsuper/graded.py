"""Z2-graded linear algebra on V^{(x)n}, V = C^{M|N}.

Operators are stored sparsely as {(row multi-index, column multi-index): MRat},
indices 1-based.  Row = output, column = input, matching S v_j = sum_i v_i S_ij.
Components of tensor products already carry the Koszul sign

    (S_1 x ... x S_n) v_{j_1} x ... x v_{j_n}
        = (-1)^{sum_k [S_k] sum_{l<k} [j_l]} S_1 v_{j_1} x ... x S_n v_{j_n},

so composition of operators is the ordinary matrix product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import MRat

__all__ = ["Grading", "GradedMat", "graded_permutation", "koszul_compose", "ElemTensor"]


@dataclass(frozen=True)
class Grading:
    """Parity assignment on the basis v_1..v_{M+N}.

    paper   : [v_j] = (nu_j + 1)/2, so v_1..v_M are odd
    flipped : [v_j] = (1 - nu_j)/2, so v_{M+1}..v_{M+N} are odd
    """

    M: int
    N: int
    convention: str = "paper"

    def __post_init__(self):
        if self.convention not in ("paper", "flipped"):
            raise ValueError("convention must be 'paper' or 'flipped'")
        if self.M < 0 or self.N < 0 or self.M + self.N == 0:
            raise ValueError("need M, N >= 0 and M+N > 0")

    @property
    def dim(self) -> int:
        return self.M + self.N

    def nu(self, j: int) -> int:
        return 1 if 1 <= j <= self.M else -1

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.dim:
            raise IndexError(j)
        n = self.nu(j)
        return (n + 1) // 2 if self.convention == "paper" else (1 - n) // 2

    def parities(self) -> tuple:
        return tuple(self(j) for j in range(1, self.dim + 1))


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


class GradedMat:
    __slots__ = ("g", "legs", "entries")

    def __init__(self, g: Grading, legs: int, entries=None):
        self.g, self.legs = g, legs
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, g: Grading, legs: int = 1):
        rng = range(1, g.dim + 1)
        return cls(g, legs, {(t, t): MRat(1) for t in itertools.product(rng, repeat=legs)})

    @classmethod
    def diagonal(cls, g: Grading, values):
        return cls(g, 1, {((j,), (j,)): MRat.coerce(v) for j, v in enumerate(values, start=1)})

    @classmethod
    def elementary(cls, g: Grading, i: int, j: int, coeff=1):
        return cls(g, 1, {((i,), (j,)): MRat.coerce(coeff)})

    def basis(self):
        return list(itertools.product(range(1, self.g.dim + 1), repeat=self.legs))

    # -- access ---------------------------------------------------------------
    def __getitem__(self, key):
        rows, cols = key
        return self.entries.get((tuple(rows), tuple(cols)), MRat(0))

    def _compat(self, other):
        if not isinstance(other, GradedMat) or other.g != self.g or other.legs != self.legs:
            raise ValueError("dimension or grading mismatch")

    # -- algebra --------------------------------------------------------------
    def __add__(self, other):
        self._compat(other)
        e = dict(self.entries)
        for k, v in other.entries.items():
            e[k] = e[k] + v if k in e else v
        return GradedMat(self.g, self.legs, e)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = MRat.coerce(c)
        return GradedMat(self.g, self.legs, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        self._compat(other)
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, m), v in self.entries.items():
            for c, w in by_row.get(m, ()):
                k = (r, c)
                out[k] = out[k] + v * w if k in out else v * w
        return GradedMat(self.g, self.legs, out)

    def map(self, f):
        return GradedMat(self.g, self.legs, {k: f(v) for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedMat):
            return NotImplemented
        if other.g != self.g or other.legs != self.legs:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self[k] == other[k] for k in keys)

    def first_difference(self, other):
        for k in sorted(set(self.entries) | set(other.entries)):
            if self[k] != other[k]:
                return k, self[k], other[k]
        return None

    def is_scalar(self):
        """Return c if self == c * Id, else None."""
        diag = {r for (r, c) in self.entries if r == c}
        if any(r != c for (r, c) in self.entries):
            return None
        if len(diag) != self.g.dim ** self.legs:
            return MRat(0) if not self.entries else None
        vals = set(self.entries.values())
        return vals.pop() if len(vals) == 1 else None

    def weight_conserving(self) -> bool:
        return all(sorted(r) == sorted(c) for (r, c) in self.entries)

    # -- graded operations ----------------------------------------------------
    def entry_grade(self, key) -> int:
        r, c = key
        return sum(self.g(i) for i in r + c) % 2

    def supertranspose(self, kind: str = "st"):
        """Graded transpose.

        "st" on one leg: (S^st)_ij = S_ji (-1)^{[j]([i]+[j])}; with odd v_1..v_M
        this is the block rule (A B; C D) -> (A^t C^t; -B^t D^t).
        "st1", "st2" apply it to one leg of a two-leg operator through the
        elementary-tensor expansion; "st12" = st1 o st2.
        """
        p = self.g
        if kind == "st":
            if self.legs != 1:
                raise ValueError("st needs a one-leg operator")
            out = {}
            for ((j,), (i,)), v in self.entries.items():
                out[((i,), (j,))] = v * _sign(p(j) * (p(i) + p(j)))
            return GradedMat(p, 1, out)
        if self.legs != 2:
            raise ValueError("%s needs a two-leg operator" % kind)
        if kind == "st12":
            return self.supertranspose("st2").supertranspose("st1")
        if kind not in ("st1", "st2"):
            raise ValueError("unknown supertranspose %r" % kind)
        out = {}
        for ((a, b), (c, d)), v in self.entries.items():
            # R = sum coef E_{ac} x E_{bd} with coef = v (-1)^{[E_bd][c]}
            coef = v * _sign(((p(b) + p(d)) % 2) * p(c))
            if kind == "st1":
                coef = coef * _sign(p(a) * (p(a) + p(c)))
                a, c = c, a
            else:
                coef = coef * _sign(p(b) * (p(b) + p(d)))
                b, d = d, b
            key = ((a, b), (c, d))
            val = coef * _sign(((p(b) + p(d)) % 2) * p(c))
            out[key] = out[key] + val if key in out else val
        return GradedMat(p, 2, out)

    def supertranspose_printed(self, kind: str):
        """The componentwise st1 / st2 / st12 formulas as usually printed for R-matrices:

        (S^st1)_{i,j}^{k,l} = S_{k,j}^{i,l} (-1)^{[i]([i]+[k])}
        (S^st2)_{i,j}^{k,l} = S_{i,l}^{k,j} (-1)^{[j]([l]+[j])}
        (S^st12)_{i,j}^{k,l} = S_{k,l}^{i,j} (-1)^{([i]+[j])([i]+[j]+[k]+[l])}
        """
        if self.legs != 2:
            raise ValueError("%s needs a two-leg operator" % kind)
        p = self.g
        out = {}
        for ((a, b), (c, d)), v in self.entries.items():
            if kind == "st1":
                i, j, k, l = c, b, a, d
                out[((i, j), (k, l))] = v * _sign(p(i) * (p(i) + p(k)))
            elif kind == "st2":
                i, j, k, l = a, d, c, b
                out[((i, j), (k, l))] = v * _sign(p(j) * (p(l) + p(j)))
            elif kind == "st12":
                i, j, k, l = c, d, a, b
                out[((i, j), (k, l))] = v * _sign((p(i) + p(j)) * (p(i) + p(j) + p(k) + p(l)))
            else:
                raise ValueError("unknown supertranspose %r" % kind)
        return GradedMat(p, 2, out)

    def embed(self, positions, legs: int):
        """Place a two-leg operator on legs `positions` (0-based) of `legs` legs."""
        if self.legs != 2:
            raise ValueError("embed expects a two-leg operator")
        pa, pb = positions
        g = self.g
        others = [x for x in range(legs) if x not in positions]
        out = {}
        rng = range(1, g.dim + 1)
        for ((ka, kb), (ja, jb)), v in self.entries.items():
            # strip the two-leg Koszul sign to get the elementary-tensor coefficient
            sb = (g(kb) + g(jb)) % 2
            coef = v * _sign(sb * g(ja))
            for rest in itertools.product(rng, repeat=len(others)):
                row = [0] * legs
                col = [0] * legs
                row[pa], row[pb], col[pa], col[pb] = ka, kb, ja, jb
                for x, t in zip(others, rest):
                    row[x] = col[x] = t
                grades = [0] * legs
                grades[pa] = (g(ka) + g(ja)) % 2
                grades[pb] = sb
                e = sum(grades[k] * sum(g(col[l]) for l in range(k)) for k in range(legs))
                key = (tuple(row), tuple(col))
                val = coef * _sign(e)
                out[key] = out[key] + val if key in out else val
        return GradedMat(g, legs, out)

    def inverse(self):
        """Exact inverse via Gauss-Jordan on the connected blocks of the sparsity pattern."""
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for b in self.basis():
            find(("r", b))
            find(("c", b))
        for (r, c) in self.entries:
            parent[find(("r", r))] = find(("c", c))
        blocks = {}
        for b in self.basis():
            blocks.setdefault(find(("r", b)), [set(), set()])[0].add(b)
            blocks.setdefault(find(("c", b)), [set(), set()])[1].add(b)
        out = {}
        for rows, cols in blocks.values():
            rows, cols = sorted(rows), sorted(cols)
            if len(rows) != len(cols):
                raise ZeroDivisionError("singular block")
            n = len(rows)
            a = [[self[(r, c)] for c in cols] + [MRat(1) if i == j else MRat(0) for j in range(n)]
                 for i, r in enumerate(rows)]
            for col in range(n):
                piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
                if piv is None:
                    raise ZeroDivisionError("singular matrix")
                a[col], a[piv] = a[piv], a[col]
                inv = a[col][col].inv()
                a[col] = [x * inv for x in a[col]]
                for i in range(n):
                    if i != col and not a[i][col].is_zero():
                        f = a[i][col]
                        a[i] = [x - f * y for x, y in zip(a[i], a[col])]
            # inverse maps rows-space back to cols-space
            for i, c in enumerate(cols):
                for j, r in enumerate(rows):
                    v = a[i][n + j]
                    if not v.is_zero():
                        out[(c, r)] = v
        return GradedMat(self.g, self.legs, out)

    def __repr__(self):
        return "GradedMat(legs=%d, nnz=%d)" % (self.legs, len(self.entries))


def graded_permutation(g: Grading) -> GradedMat:
    """P_{k1,k2}^{j1,j2} = (-1)^{[k1][k2]} delta_{j1,k2} delta_{j2,k1}."""
    out = {}
    for k1 in range(1, g.dim + 1):
        for k2 in range(1, g.dim + 1):
            out[((k1, k2), (k2, k1))] = MRat(_sign(g(k1) * g(k2)))
    return GradedMat(g, 2, out)


def tensor(ops) -> GradedMat:
    """S_1 x ... x S_n of one-leg operators, with the Koszul action sign."""
    g = ops[0].g
    out = {}
    lists = [list(op.entries.items()) for op in ops]
    for combo in itertools.product(*lists):
        rows = tuple(k[0][0] for k, _ in combo)
        cols = tuple(k[1][0] for k, _ in combo)
        val = MRat(1)
        for _, v in combo:
            val = val * v
        grades = [(g(r) + g(c)) % 2 for r, c in zip(rows, cols)]
        e = sum(grades[k] * sum(g(cols[l]) for l in range(k)) for k in range(len(ops)))
        key = (rows, cols)
        val = val * _sign(e)
        out[key] = out[key] + val if key in out else val
    return GradedMat(g, len(ops), out)


@dataclass(frozen=True)
class ElemTensor:
    """coeff * E_{i1 j1} x ... x E_{in jn} (coeff an integer sign or rational)."""

    coeff: int
    pairs: tuple  # ((i1, j1), ..., (in, jn)); (0, 0) stands for the identity

    def to_mat(self, g: Grading) -> GradedMat:
        ops = []
        for i, j in self.pairs:
            ops.append(GradedMat.identity(g) if (i, j) == (0, 0) else GradedMat.elementary(g, i, j))
        return tensor(ops).scale(self.coeff)


def koszul_compose(A: ElemTensor, B: ElemTensor, g: Grading):
    """(X1 x Y1 x ...)(X2 x Y2 x ...) with the sign (-1)^{sum_{k>l} [A_k][B_l]}.

    Returns an ElemTensor, or None when a leg product vanishes.  Identity legs
    are (0, 0) and have even grade.
    """
    if len(A.pairs) != len(B.pairs):
        raise ValueError("leg count mismatch")

    def grade(p):
        return 0 if p == (0, 0) else (g(p[0]) + g(p[1])) % 2
    sign = 0
    n = len(A.pairs)
    for k in range(n):
        for l in range(k + 1, n):
            sign += grade(A.pairs[l]) * grade(B.pairs[k])
    out = []
    for (a, b), (c, d) in zip(A.pairs, B.pairs):
        if (a, b) == (0, 0):
            out.append((c, d))
        elif (c, d) == (0, 0):
            out.append((a, b))
        elif b == c:
            out.append((a, d))
        else:
            return None
    return ElemTensor(A.coeff * B.coeff * _sign(sign), tuple(out))
