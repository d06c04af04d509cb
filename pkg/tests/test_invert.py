from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from qsuper.identities.invert import (charge_mismatch, invertibility_eval, poch_ratio_params,
                                      specialization_points, specialize)
from qsuper.vertex import eval_constants, truncated_poch

ONE = {"phase": "0", "q": "1", "mono": "1"}


@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 7)]))
def test_truncated_product_matches_library(a, p, qv):
    with mpmath.workdps(40):
        q = mpmath.mpf(qv.numerator) / qv.denominator
        own, k, bound = truncated_poch(a, p, q)
        lib = mpmath.qp(q ** a, q ** p)
        assert abs(own - lib) / abs(lib) <= bound + mpmath.mpf(10) ** -35


def test_specialization_points():
    assert specialization_points(3, 1) == {1: -1, 2: -2, 3: -3, 4: -2}


@pytest.mark.parametrize("M,N", [(2, 1), (3, 1), (3, 2), (1, 2), (1, 3), (2, 3)])
def test_w0_homogeneity_and_charges(M, N):
    assert charge_mismatch(M, N)["ok"]
    for mu in range(1, M + N + 1):
        assert specialize(M, N, mu)["w0_power"] is not None
    assert poch_ratio_params(M, N)[1] == 2 * abs(M - N)


@pytest.mark.parametrize("M,N", [(1, 2), (1, 3), (2, 3)])
def test_type_ii_sign_pattern(M, N):
    for mu in range(1, M + N + 1):
        r = invertibility_eval(M, N, mu, Fraction(1, 2))
        assert r["w0_free"]
        assert r["targets"]["sign"]["exact_match"] and r["targets"]["sign"]["ok"]
        assert not r["targets"]["rho"]["ok"]


def test_type_i_odd_m():
    r = invertibility_eval(3, 1, 1, Fraction(1, 3))
    assert r["status"] == "pass" and r["targets"]["rho"]["rel_err"] < 1e-10
    assert invertibility_eval(3, 1, 4, Fraction(1, 3))["status"] == "pass"
    r = invertibility_eval(3, 1, 2, Fraction(1, 3))
    assert r["status"] == "fail"
    assert r["targets"]["rho"]["exact_ratio"] == {"phase": "0", "q": "q^-1*(1)", "mono": "1"}
    assert r["alternatives"]["qpower"] == ONE


def test_type_i_even_m_sign():
    r = invertibility_eval(2, 1, 1, Fraction(1, 2))
    assert r["targets"]["rho"]["exact_ratio"] == {"phase": "1", "q": "1", "mono": "1"}


def test_degenerate_constant():
    c = eval_constants(1, 2, Fraction(1, 3))
    assert c["degenerate"] and c["value"].startswith("(0.0")
    assert c["routes_rel_diff"] < 1e-20
    c = eval_constants(1, 3, Fraction(1, 3))
    assert not c["degenerate"] and c["regularized"] is None


def test_input_validation():
    with pytest.raises(ValueError):
        invertibility_eval(2, 1, 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        invertibility_eval(2, 2, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        eval_constants(2, 1, 0)
