import pytest
from hypothesis import given, settings, strategies as st

from sltcalc import expansions as ex
from sltcalc.slt_model import build_classT
from tests.helpers import all_models


def test_X517_expansions(X517):
    M = X517
    assert ex.lambda_expand(M, 4).entries == (1, 1)
    assert ex.mu_expand(M, 4).entries == (0, 2)
    assert ex.tau_expand(M, 3).entries == (0, 1)
    assert ex.is_lambda_sequence(M, (0, 2))
    assert not ex.is_lambda_sequence(M, (0, 0))
    assert not ex.is_lambda_sequence(M, (1, 2))
    assert [ex.lambda_valuation(M, ex.lambda_expand(M, n)) for n in range(1, 7)] == list(range(1, 7))


def test_expand_rejects_out_of_range(X517):
    for n in (0, 7):
        with pytest.raises(ValueError):
            ex.lambda_expand(X517, n)
        with pytest.raises(ValueError):
            ex.mu_expand(X517, n)
    with pytest.raises(ValueError):
        ex.tau_expand(X517, 5)


def test_order_isomorphisms():
    for M in all_models():
        for kind, expand, top in (("lambda", ex.lambda_expand, M.m - 1), ("mu", ex.mu_expand, M.m - 1),
                                  ("tau", ex.tau_expand, M.m - 3)):
            seqs = ex.enumerate_sequences(M, kind)
            assert [s.entries for s in seqs] == [expand(M, n).entries for n in range(1, top + 1)]


def test_literal_readings_differ_somewhere():
    # without the top carry the literal lambda predicate admits l_k = q_k
    lit = ex.reconcile(build_classT(5, 1, 7), "lambda")
    assert [(r["entries"], r["value"]) for r in lit] == [([1, 2], 7), ([2, 2], 8)]
    assert all(r["literal"] and not r["in_image"] for r in lit)


def test_tau_top_sequence():
    for M in all_models():
        full = ex.enumerate_sequences(M, "tau", full_tau=True)
        assert len(full) == M.m - 2
        assert ex.tau_valuation(M, full[-1]) == M.m - 2


def test_auxiliary_inequalities():
    for M in all_models():
        for s in ex.enumerate_sequences(M, "lambda"):
            assert all(ex.star_condition(M, s, h) for h in range(1, M.k))
        for s in ex.enumerate_sequences(M, "tau", full_tau=True):
            t = s.entries
            i0 = next(i for i in range(1, M.k + 1) if t[i - 1])
            assert ex.remainder_inequality_check(M, t, i0)
        assert ex.tau_unit_check(M)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_models()), st.data())
def test_expansion_round_trip(M, data):
    n = data.draw(st.integers(1, M.m - 1))
    lam, mu = ex.lambda_expand(M, n), ex.mu_expand(M, n)
    assert ex.lambda_valuation(M, lam) == n and ex.is_lambda_sequence(M, lam)
    assert ex.mu_valuation(M, mu) == n and ex.is_mu_sequence(M, mu)
    if n <= M.m - 3:
        tau = ex.tau_expand(M, n)
        assert ex.tau_valuation(M, tau) == n and ex.is_tau_sequence(M, tau)


def test_X517_worked_values(X517):
    M = X517
    assert [ex.lambda_expand(M, n).entries for n in (3, 5, 6)] == [(0, 1), (2, 1), (0, 2)]
    assert [ex.mu_expand(M, n).entries for n in (1, 3, 6)] == [(1, 0), (3, 0), (2, 2)]
    assert [ex.tau_expand(M, t).entries for t in (2, 3, 4)] == [(2, 0), (0, 1), (1, 1)]
    assert [ex.lambda_valuation(M, s) for s in ((1, 0), (0, 2), (1, 1))] == [1, 6, 4]
    assert ex.mu_valuation(M, (2, 2)) == 6


def test_X517_auxiliary_examples(X517):
    M = X517
    assert ex.star_condition(M, (1, 0), 1)
    assert not ex.star_condition(M, (3, 0), 1)
    assert ex.remainder_inequality_check(M, (1, 0), 1)
    assert ex.remainder_inequality_check(M, (0, 1), 2)
    with pytest.raises(ValueError):
        ex.remainder_inequality_check(M, (0, 1), 1)
    with pytest.raises(ValueError):
        ex.star_condition(M, (1, 0), 2)
    assert ex.tau_unit_check(M)
