from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qsuper.exact import MRat, var
from qsuper.identities import (D_mu, HFactor, IntegralCoeffs, Num, Sym, build_F_mu, check_F_mu,
                               check_prop, fmu_terms, instances, numeric_symmetrized,
                               weak_equal, weak_symmetrize)
from qsuper.identities.props import STATED, admissible, all_instances
from qsuper.vertex import Placed, exchange_ratio

q = var("q")
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=9).filter(lambda x: x not in (0, 1, -1))


@st.composite
def mn_j(draw):
    M = draw(st.integers(0, 3))
    N = draw(st.integers(max(0, 2 - M), 3))
    j = draw(st.integers(1, M + N - 1))
    return M, N, j


@given(mn_j(), st.sampled_from("+-"))
def test_h_times_swapped_h_is_one(mnj, sign):
    M, N, j = mnj
    H = HFactor(j, sign, M, N).mrat()
    assert H * H.swap("w%d" % j, "w%dp" % j) == 1


@pytest.mark.parametrize("M,N", [(1, 2), (2, 1), (3, 2)])
def test_h_boundary_is_minus_one(M, N):
    assert HFactor(M, "-", M, N).mrat() == -1
    assert HFactor(M, "+", M, N).mrat() == -1


def test_hfactor_validation():
    with pytest.raises(ValueError):
        HFactor(3, "-", 2, 1)
    with pytest.raises(ValueError):
        HFactor(1, "*", 2, 1)


def _xminus(M, j, eps):
    return ("X-", j) if j < M else ("X-", j, eps)


@pytest.mark.parametrize("M,N", [(2, 1), (1, 2), (2, 3), (3, 2)])
def test_h_is_the_current_exchange_ratio(M, N):
    for j in range(1, M + N):
        for e1 in ((None,) if j < M else (1, -1)):
            for e2 in ((None,) if j < M else (1, -1)):
                r = exchange_ratio(M, N, Placed(_xminus(M, j, e1), "z1"), Placed(_xminus(M, j, e2), "z2"), K=8)
                F = r["F"].to_mrat("z")
                H = HFactor(j, "-", M, N).mrat().subs_value({"w%d" % j: 1}).rename({"w%dp" % j: "z"})
                assert F == H, (j, e1, e2)


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2),
                                    st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=4))
    return sum((MRat.monomial(c, w1=a, w1p=b, w2=d, w2p=e) for c, a, b, d, e in terms), MRat(0))


@given(polys(), polys())
def test_symmetrization_linear_and_order_free(f, g):
    M, N = 1, 2
    S = lambda F, pairs: weak_symmetrize(F, pairs, "-", M, N)
    assert S(f + 3 * g, [1, 2]) == S(f, [1, 2]) + 3 * S(g, [1, 2])
    assert S(f, [1, 2]) == S(f, [2, 1])


@given(polys())
def test_symmetrized_functions_are_weakly_zero_only_if_zero(f):
    M, N = 2, 1
    S = weak_symmetrize(f, [1], "-", M, N)
    # a symmetrized function is an eigenvector of 1 + H swap with eigenvalue 2
    assert weak_symmetrize(S, [1], "-", M, N) == 2 * S


def test_overlapping_pairs_rejected():
    with pytest.raises(ValueError):
        weak_symmetrize(var("w1"), [1, 1], "-", 2, 1)


@given(nonzero, nonzero, nonzero, nonzero, nonzero)
def test_symbolic_and_subset_sum_routes_agree(qv, a, b, c, d):
    M, N = 1, 2

    def build(ctx):
        w, wp = ctx.w, ctx.wp
        return (w(1) - ctx.q * wp(2)) * w(2), wp(1) * w(2)
    lhs, rhs = build(Sym())
    S = weak_symmetrize(lhs - rhs, [1, 2], "-", M, N)
    vals = {"q": qv, "w1": a, "w1p": b, "w2": c, "w2p": d}
    try:
        sym = S(**vals)
        num = numeric_symmetrized(build, vals, [1, 2], "-", M, N)
    except ZeroDivisionError:
        return
    assert sym == num


def test_d_pair_swap_symmetry():
    a, ap, b, bp = var("w1"), var("w1p"), var("w2"), var("w2p")
    for f in (IntegralCoeffs.D, IntegralCoeffs.Dbar):
        base = f(a, ap, b, bp, q)
        assert f(ap, a, b, bp, q) == base
        assert f(a, ap, bp, b, q) == base
        assert f(ap, a, bp, b, q) == base
        assert base.swap("w1", "w1p").swap("w2", "w2p") == base


def test_d_under_substitution():
    D = IntegralCoeffs.D(var("w1"), var("w1p"), var("w2"), var("w2p"), q)
    got = D.subs_monomial({"w2p": (1, {"w2": 1})})
    want = (1 - q * var("w1") / var("w2")) ** 2 * (1 - q * var("w1p") / var("w2")) ** 2
    assert got == want


def test_d_mu_one_formula_covers_edge_cases():
    c = Sym()
    # (M|0): only the first product; (0|N): only the second
    assert D_mu(c, 3, 3) == ((c.wp(0) - q * c.w(1)) * (c.wp(1) - q * c.w(0))
                             * (c.wp(1) - q * c.w(2)) * (c.wp(2) - q * c.w(1)))
    assert D_mu(c, 0, 2) == (q * c.wp(0) - c.w(1)) * (q * c.wp(1) - c.w(0))


def test_smallest_instances():
    r = check_prop("1", 1, 2, 1, 2, samples=10)
    assert r["status"] == "pass"
    r = check_prop("2", 2, 1, 1, 3, samples=10)
    assert r["status"] == "pass"


def test_prop6_first_case_is_a_plain_identity():
    for M, N in [(1, 2), (2, 1), (2, 3)]:
        inst = instances("6", M, N, 1)
        (ident,) = inst.relations["6"].values()
        lhs, rhs = ident.sides()
        assert ident.pairs == () and lhs == rhs


def test_prop5_factor_example():
    # smallest case with the extra factor: (M|N) = (1|2), mu = 2
    inst = instances("5", 1, 2, 2)
    readings = inst.relations["5"]
    assert set(readings) == {"sign", "swapped", "printed"}
    r = check_prop("5", 1, 2, 2, samples=5)
    assert r["status"] == "fail" and r["witness"]["holds_under"] == ["sign"]


def test_prop5prime_either_argument_order():
    r = check_prop("5prime", 0, 3, 3, samples=5)
    assert r["status"] == "pass"
    assert all(v["exact"] for v in r["readings"]["5prime"].values())


def test_stated_readings():
    assert STATED == ("printed", "swapped")


def test_admissible_ranges():
    assert admissible("3", 3, 2) == [(1, 5), (2, 5)]
    with pytest.raises(ValueError):
        admissible("7", 1, 2)
    with pytest.raises(ValueError):
        admissible("5prime", 1, 2)
    with pytest.raises(ValueError):
        instances("2", 2, 1, 1, 2)
    assert len(all_instances(4)) == len(set(all_instances(4)))


@pytest.mark.parametrize("M,N,mu", [(2, 1, 1), (1, 2, 3), (2, 3, 2), (3, 1, 4)])
def test_fmu_vanishes_and_controls_bite(M, N, mu):
    assert build_F_mu(M, N, mu).is_zero()
    for k in fmu_terms(M, N, mu, Sym()):
        assert not build_F_mu(M, N, mu, drop=k).is_zero()
    r = check_F_mu(M, N, mu)
    assert r["status"] == "pass" and all(r["controls"].values())


def test_fmu_numeric_context():
    vals = {"q": Fraction(2, 9)}
    vals.update({"w%d" % j: Fraction(j + 5, 3 * j + 1) for j in range(6)})
    assert build_F_mu(2, 3, 4, ctx=Num(vals)) == 0
    with pytest.raises(KeyError):
        build_F_mu(2, 1, 1, drop="nope")
    with pytest.raises(ValueError):
        build_F_mu(2, 1, 4)
