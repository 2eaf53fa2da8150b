import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sltcalc.fullsheaf import DivisorVector, nu
from sltcalc.pairing import (
    cross_term_hypotheses,
    cross_term_order,
    cross_term_check,
    delta,
    ibar_e,
    nu_squared,
    nu_squared_bounds,
    pair,
    phi,
    phi_identity,
    prev_lex,
    psi,
    psi_identity,
    psi_pairs,
    stats,
    theta,
    theta_identity,
    toric_pair_oracle,
)
from sltcalc.slt_model import build_classT
from tests.helpers import all_models, normal_models


def test_X517_squares(X517):
    assert [nu_squared(X517, n) for n in range(1, 7)] == [1, 2, 3, 2, 3, 4]
    s = stats(X517, nu(X517, 6))
    assert (s.sigma, s.tau, s.sigma_bar, s.tau_bar) == (6, 6, 4, 5)


def test_X517_small_n_counterexample(X517):
    # nu(3)^2 = 3 exceeds the small-range value 1
    b = nu_squared_bounds(X517, 3)
    assert b["range"] == "small" and b["square"] == 3 and b["rhs"] == 1
    assert b["holds"] and not b["reverse_holds"]


def test_X517_special_elements(X517):
    assert theta(X517, 1, 1).same_as(DivisorVector({(1, 2): -1, (3, 1): 1}, {(2, 1): 1}))
    assert phi(X517, 2, 2).same_as(DivisorVector({(3, 1): 1}, {(2, 1): -1, (3, 1): 1}))
    assert theta_identity(X517, 1, 1)["square"] == 1
    assert phi_identity(X517, 2, 2)["square"] == 1
    assert delta(X517, 2, 1) == ("e", (2, 1)) and delta(X517, 3, 1) == ("o", (3, 1))
    assert ibar_e(X517) == ((2, 1), (3, 1))
    assert prev_lex(X517, (1, 1)) is None and prev_lex(X517, (3, 1)) == (1, 2)


def test_formula_matches_toric_oracle():
    for M in all_models():
        vs = [nu(M, n) for n in range(1, M.m)]
        for v in vs:
            assert pair(M, v, v) == toric_pair_oracle(M, v, v)
        for v, w in zip(vs, vs[1:]):
            assert pair(M, v, w) == toric_pair_oracle(M, v, w)


def _random_vector(M, rng):
    return DivisorVector({i: rng.randint(-3, 3) for i in M.indexO}, {i: rng.randint(-3, 3) for i in ibar_e(M)})


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(all_models()), st.integers(0, 2**32))
def test_bilinear_symmetric(M, seed):
    rng = random.Random(seed)
    x, y, z = (_random_vector(M, rng) for _ in range(3))
    c = rng.randint(-3, 3)
    assert pair(M, x, y) == pair(M, y, x) == toric_pair_oracle(M, x, y)
    assert pair(M, x + z.scaled(c), y) == pair(M, x, y) + c * pair(M, z, y)


def test_rejects_unsplit_vector(X517):
    with pytest.raises(ValueError):
        pair(X517, DivisorVector({(2, 1): 1}, {}), nu(X517, 1))


def test_top_square_is_sum_of_q():
    for M in all_models():
        assert nu_squared(M, M.m - 1) == sum(M.q)
        assert all(nu_squared(M, n).denominator == 1 for n in range(1, M.m))


def test_special_identities():
    for M in all_models():
        for i in range(1, M.k + 1):
            for j in range(1, M.qi(i) + 1):
                assert phi_identity(M, i, j)["ok"]
        for i in range(1, M.k):
            for j in range(1, M.qi(i) + 1):
                assert theta_identity(M, i, j)["ok"]
        for iota, eta in psi_pairs(M):
            assert psi_identity(M, iota, eta)["ok"], (M.label, iota, eta)


def test_literal_phi_breaks_somewhere():
    broken = 0
    for M in normal_models():
        for i in range(1, M.k + 1):
            for j in range(2, M.qi(i) + 1):
                try:
                    broken += not phi_identity(M, i, j, "literal")["ok"]
                except KeyError:
                    broken += 1
    assert broken > 0


def test_bounds_and_recursions():
    for M in all_models():
        for n in range(1, M.m):
            assert nu_squared_bounds(M, n)["holds"]
            assert all(rec["ok"] for rec in cross_term_check(M, n))


def test_cross_terms_vanish_in_support_order():
    tested = 0
    for M in [M for M in all_models() if M.m <= 10]:
        pool = [nu(M, n) for n in range(1, M.m)]
        pool += [psi(M, a, b) for a, b in psi_pairs(M)]
        pool += [theta(M, i, j) for i in range(1, M.k) for j in range(1, M.qi(i) + 1)]
        for A in pool:
            for B in pool:
                if cross_term_hypotheses(M, A, B) and cross_term_order(A, B, "support"):
                    tested += 1
                    assert pair(M, A, B) == 0
    assert tested > 100


def test_componentwise_reading_fails():
    # every vector is componentwise below itself, yet phi(2,2)^2 = 1 on X_{3,1,5}
    M = build_classT(3, 1, 5)
    A = phi(M, 2, 2)
    assert cross_term_hypotheses(M, A, A) and cross_term_order(A, A, "componentwise")
    assert not cross_term_order(A, A, "support")
    assert pair(M, A, A) == 1
    with pytest.raises(ValueError):
        cross_term_order(DivisorVector(), DivisorVector(), "other")


def test_pair_values_are_fractions(X517):
    assert isinstance(pair(X517, nu(X517, 1), nu(X517, 2)), Fraction)


def test_X517_worked_values(X517):
    M = X517
    assert phi(M, 2, 1).total == {} and pair(M, phi(M, 2, 1), phi(M, 2, 1)) == 0
    s = stats(M, phi(M, 2, 2))
    assert (s.sigma, s.tau, s.sigma_bar, s.tau_bar) == (3, 3, 2, 2)
    assert pair(M, nu(M, 1), phi(M, 2, 2)) == 0
    assert nu(M, 4).same_as(nu(M, 1) + phi(M, 2, 2))
    b = nu_squared_bounds(M, 2)
    assert b["square"] == b["rhs"] == 2 and b["reverse_holds"]
    assert toric_pair_oracle(M, DivisorVector(), nu(M, 3)) == 0
    assert toric_pair_oracle(M, nu(M, 3), nu(M, 3)) == 3
