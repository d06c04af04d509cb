from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qsuper.boson import (BosonBasis, alpha_beta, h_modes, hstar_kernel, hstar_kernel_closed,
                          hstar_modes, qh_int)
from qsuper.catalog import catalog
from qsuper.exact import MRat, Scalar
from qsuper.rules import Rule, corrected_reading, rule_ids, rule_table, verify_rule
from qsuper.vertex import chains, composite_scalar_check, printed_typeII_backward

GRID = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]


def _rule(M, N, rid, **params):
    for r in rule_table(M, N):
        if r.rid == rid and all(r.params.get(k) == v for k, v in params.items()):
            return r
    raise LookupError(rid)


@pytest.mark.parametrize("M,N", GRID)
def test_hstar_kernels_closed_forms(M, N):
    top = M + N - 1
    for which, (i, k) in {"11": (1, 1), "LL": (top, top), "1L": (1, top)}.items():
        eng, closed = hstar_kernel(M, N, i, k), hstar_kernel_closed(M, N, which)
        assert eng == closed
        for m in (1, 2, 7, 50):
            assert eng.specialize_qh(m) == closed.specialize_qh(m)


def test_hstar_dual_to_h():
    # [h*^i_m, h^j_-m] = delta_ij [m]^2/m: the defining duality
    M, N = 2, 3
    basis = BosonBasis(M, N)
    for i in range(1, M + N):
        A = hstar_modes(M, N, i)
        for j in range(1, M + N):
            B = h_modes(M, N, j)
            tot = sum((A[s][0] * B[s][0] * basis.kernel(s) for s in A if s in B), MRat(0))
            assert tot == (qh_int(1) ** 2 if i == j else MRat(0))


@given(st.integers(1, 4), st.integers(1, 4))
def test_alpha_beta_symmetric(i, j):
    M, N = 3, 2
    if max(i, j) <= M + N - 1:
        assert alpha_beta(M, N, i, j) == alpha_beta(M, N, j, i)


@pytest.mark.parametrize("M,N,rid", [(2, 1, "phistar.phistar"), (2, 1, "phi.phi"), (1, 2, "psi.psi"),
                                     (3, 2, "phistar.x-1"), (1, 3, "psistar.psistar"),
                                     (2, 3, "x-.x-.Mj")])
def test_rules_hold(M, N, rid):
    for r in rule_table(M, N):
        if r.rid == rid:
            v = verify_rule(M, N, r, K=12)
            assert v["ok"], v


def test_rule_verification_catches_a_changed_factor():
    r = _rule(2, 1, "phistar.phistar")
    bad = Rule(r.rid, r.left, r.right, r.factors[:-1] + (("poch", 4, 2, -1),), r.pl, r.pr)
    v = verify_rule(2, 1, bad, K=10)
    assert not v["kernel"] and not v["series"]
    flipped = Rule(r.rid, r.left, r.right, r.factors + (("const", -1),), r.pl, r.pr)
    v = verify_rule(2, 1, flipped, K=10)
    assert v["kernel"] and v["series"] and not v["scalar"]


def test_pole_follows_psistar_eps():
    for M, N in [(1, 2), (2, 3)]:
        for a, b in [(1, -1), (-1, 1)]:
            r = _rule(M, N, "x+top.psistar", eps1=a, eps2=b)
            stated = verify_rule(M, N, r, K=10)
            alt = verify_rule(M, N, corrected_reading(r), K=10)
            assert not stated["kernel"]
            assert alt["kernel"] and alt["series"]
        same = _rule(M, N, "x+top.psistar", eps1=1, eps2=1)
        assert corrected_reading(same) is None


def test_rule_ids_depend_on_branch():
    assert "phi.x-top" in rule_ids(1, 2) and "phi.x-top" not in rule_ids(2, 1)
    with pytest.raises(ValueError):
        rule_table(2, 2)


def test_catalog_rejects_bad_keys():
    cat = catalog(2, 1)
    with pytest.raises(KeyError):
        cat[("X+", 3)]
    with pytest.raises(KeyError):
        cat[("X-", 2)]            # split current needs an eps
    with pytest.raises(KeyError):
        cat[("X+", 1, 1)]


@pytest.mark.parametrize("M,N", [(3, 1), (3, 2), (1, 2), (1, 3), (2, 3)])
def test_composite_chains_cancel(M, N):
    for name, (ch, target) in chains(M, N).items():
        r = composite_scalar_check(M, N, ch, target, sweep=10)
        assert r["ok"], (name, r["witness"])


def test_composite_even_M_sign():
    for name, (ch, target) in chains(2, 1).items():
        r = composite_scalar_check(2, 1, ch, target, sweep=5)
        assert not r["ok"]
        assert r["witness"]["oscillators"] is None
        assert r["witness"]["residual_over_target"] == "-1"


def test_printed_endpoint_leaves_oscillators():
    ch, target = printed_typeII_backward(1, 2)
    r = composite_scalar_check(1, 2, ch, target, sweep=5)
    assert not r["ok"] and r["witness"]["oscillators"]


def test_composite_target_shape():
    ch, target = chains(3, 1)["typeI.forward"]
    assert target == Scalar(0, 1, {"q": Fraction(-1, 2), "z": Fraction(1, 2)})


def test_chi_relation_holds_under_both_argument_readings():
    from qsuper.vertex import relation_table, verify_relation
    rels = {(r.rid, r.note): r for r in relation_table(1, 2)}
    for note in ("eps=+1", "eps=-1"):
        assert verify_relation(1, 2, rels[("psistar.phi", note)], 20)["ok"]
        alt = next(r for (rid, n), r in rels.items() if rid == "psistar.phi.alt" and n.startswith(note))
        assert verify_relation(1, 2, alt, 20)["ok"]
    assert verify_relation(1, 2, rels[("psi.phi", "")], 20)["ok"]
