import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest

from qsuper import rmatrix
from qsuper.exact import MRat, var
from qsuper.graded import GradedMat, Grading, graded_permutation
from qsuper.rmatrix import (check_derived, check_initial, check_unitarity, check_ybe, kappa,
                            rbar_vv, rho)

GRID = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]


# -- an independent numeric route for the graded YBE ---------------------------

def _mul(A, B):
    by = {}
    for (r, c), v in B.items():
        by.setdefault(r, []).append((c, v))
    out = {}
    for (r, m), v in A.items():
        for c, w in by.get(m, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    return {k: v for k, v in out.items() if v}


def _embed12(R, n):
    return {((a, b, c), (d, e, c)): v for ((a, b), (d, e)), v in R.items() for c in range(1, n + 1)}


def _embed23(R, n):
    return {((c, a, b), (c, d, e)): v for ((a, b), (d, e)), v in R.items() for c in range(1, n + 1)}


def _p23(g):
    n = g.dim
    return {((i, k, j), (i, j, k)): (-1 if g(j) * g(k) else 1)
            for i, j, k in itertools.product(range(1, n + 1), repeat=3)}


def _numeric_ybe(g):
    n = g.dim
    z1, z2, z3 = Fraction(2, 3), Fraction(-5, 7), Fraction(3, 11)
    q = Fraction(2, 5)
    R = lambda z: {k: v.subs_value({"q": q})() for k, v in rbar_vv(g, MRat(z)).entries.items()}
    P = _p23(g)
    R12 = _embed12(R(z1 / z2), n)
    R23 = _embed23(R(z2 / z3), n)
    R13 = _mul(_mul(P, _embed12(R(z1 / z3), n)), P)
    return _mul(_mul(R12, R13), R23) == _mul(_mul(R23, R13), R12)


@pytest.mark.parametrize("M,N", [(1, 2), (2, 1)])
@pytest.mark.parametrize("conv", ["paper", "flipped"])
def test_ybe_numeric_route_agrees(M, N, conv):
    g = Grading(M, N, conv)
    num = _numeric_ybe(g)
    assert num == check_ybe(g)["ok"]
    # only the first-block-odd parity makes the diagonal weights consistent
    assert num == (conv == "paper")


@pytest.mark.parametrize("M,N", GRID)
def test_ybe_symbolic(M, N):
    assert check_ybe(Grading(M, N))["ok"]


def test_ybe_detects_a_perturbed_entry(monkeypatch):
    real = rmatrix.rbar_vv

    def bent(g, z):
        R = real(g, z)
        e = dict(R.entries)
        e[((1, 2), (2, 1))] = e[((1, 2), (2, 1))] * 2
        return GradedMat(g, 2, e)
    monkeypatch.setattr(rmatrix, "rbar_vv", bent)
    assert not check_ybe(Grading(2, 1))["ok"]


def test_ybe_detects_wrong_grading_sign(monkeypatch):
    real = rmatrix.rbar_vv

    def bent(g, z):
        R = real(g, z)
        e = {k: (-v if k[0] != k[1] and k[0][0] != k[0][1] and g(k[0][0]) and g(k[0][1]) else v)
             for k, v in R.entries.items()}
        return GradedMat(g, 2, e)
    monkeypatch.setattr(rmatrix, "rbar_vv", bent)
    assert not check_ybe(Grading(3, 1))["ok"]


@pytest.mark.parametrize("M,N", GRID)
def test_weight_conservation_and_permutation(M, N):
    g = Grading(M, N)
    assert rbar_vv(g, var("z")).weight_conserving()
    P = graded_permutation(g)
    assert P @ P == GradedMat.identity(g, 2)


@pytest.mark.parametrize("M,N", GRID)
def test_unitarity(M, N):
    r = check_unitarity(Grading(M, N), K=20)
    assert r["ok"], r


def test_rho_values():
    # 2 rho_j = M - N + 1 - 2j (j <= M), -M - N - 1 + 2k (j = M + k)
    assert rho(2, 1) == [0, -2, -2]
    assert rho(1, 2) == [-2, -2, 0]


def test_kappa_inverse_pair():
    for M, N in GRID:
        for typ in ("I", "II"):
            k = kappa("VV", typ, M, N)
            assert k * k.invert() == rmatrix.QProduct.one()


def test_initial_outcomes_match_golden():
    golden = json.loads((Path(__file__).parent / "golden" / "initial.json").read_text())
    for row in golden:
        got = check_initial(Grading(row["M"], row["N"], row["convention"]))
        assert json.loads(json.dumps(got)) == row["outcome"]


@pytest.mark.parametrize("M,N", [(2, 1), (1, 2)])
def test_derived_v_star_v_matches_closed_form(M, N):
    r = check_derived(Grading(M, N))
    assert r["V*V"]["match"]
    assert r["V*V*_transpose"]
    assert all(r["unitary_normalised"].values())


def test_grading_validation():
    with pytest.raises(ValueError):
        Grading(1, 1, "other")
    with pytest.raises(ValueError):
        Grading(0, 0)
    with pytest.raises(ValueError):
        check_ybe(Grading(2, 2))
