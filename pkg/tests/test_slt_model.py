import json
import pytest

from sltcalc.slt_model import (
    admissible_classT,
    boundary_identities,
    build_classT,
    build_nonnormal,
    chain_neighbors,
    gorenstein_index,
    model_to_json,
)
from tests.helpers import all_models, normal_models


def test_X517_tables(X517):
    M = X517
    assert M.q == (2, 2) and M.k == 2
    assert M.index == ((1, 1), (1, 2), (2, 1), (3, 1))
    assert M.index_e_bar == ((2, 1), (3, 1))
    assert M.chain_order == ((1, 1), (1, 2), (3, 1), (2, 1))
    assert M.order == 49 and M.weight_s == 34
    assert gorenstein_index(M) == 7
    assert [(M.lam(i), M.mu(i)) for i in M.index] == [(1, 34), (2, 19), (13, 1), (3, 4)]
    assert M.label


def test_X35_tables(X35):
    N = X35
    assert N.q == (1, 2)
    assert N.index == ((1, 1), (2, 1), (2, 2), (3, 1))
    assert N.index_e_bar == ((2, 1), (2, 2))
    assert [N.chart_of(i) for i in N.index] == ["o", "e", "e", "o"]
    assert gorenstein_index(N) == 5


@pytest.mark.parametrize("args", [(3, 1, 7), (4, 1, 8), (6, 0, 7), (7, 1, 7)])
def test_build_classT_rejects(args):
    with pytest.raises(ValueError):
        build_classT(*args)


def test_admissible_agrees_with_builder():
    for m in range(3, 25):
        for a in range(1, m):
            for d in (1, 2):
                if admissible_classT(a, d, m):
                    assert build_classT(a, d, m, allow_odd=True).m == m
                else:
                    with pytest.raises(ValueError):
                        build_classT(a, d, m, allow_odd=True)


def test_odd_length_needs_opt_in():
    # 5/3 = [1, 1, 2] is rebuilt as [1, 1, 1, 1]
    with pytest.raises(ValueError):
        build_classT(5, 1, 8)
    M = build_classT(5, 1, 8, allow_odd=True)
    assert M.q == (1, 1, 1, 1) and gorenstein_index(M) == 8


def test_boundary_identities():
    for M in normal_models():
        assert all(rec["ok"] for rec in boundary_identities(M))


def test_chain_neighbors_walk_the_order():
    for M in all_models():
        if M.normal:
            chains = [M.chain_order]
        else:
            chains = [M.chain_order_chart("o"), M.chain_order_chart("e")]
        for order in chains:
            _walk(M, order)


def _walk(M, order):
    for pos, idx in enumerate(order):
        left, right = chain_neighbors(M, idx)
        assert left == (order[pos - 1] if pos else None)
        assert right == (order[pos + 1] if pos + 1 < len(order) else None)


def test_index_is_m():
    for M in all_models():
        assert gorenstein_index(M) == M.m


def test_json_round_trips_as_strings(X517, X35):
    for M in (X517, X35):
        doc = model_to_json(M)
        text = json.dumps(doc, sort_keys=True)
        assert json.loads(text) == doc
        assert all(isinstance(x, str) for x in doc["q"])


def test_X517_rho_and_neighbours(X517):
    assert [X517.weights[i].rho for i in X517.index] == [5, 3, 2, 1]
    assert chain_neighbors(X517, (3, 1)) == ((1, 2), (2, 1))
    assert chain_neighbors(X517, (1, 1))[0] is None
    assert chain_neighbors(X517, (2, 1))[1] is None


def test_small_models():
    # 9/5 = [[2, 5]] and 2/1 = [2] has odd length
    M = build_classT(2, 1, 3, allow_odd=True)
    assert M.chain.k == len(M.index) == 2 and M.chain.selfInt == (-2, -5)
    M = build_classT(3, 3, 5)
    assert (M.order, M.weight_s, gorenstein_index(M)) == (75, 44, 5)


def test_X35_weights_and_cones(X35):
    assert [(X35.lam(i), X35.mu(i)) for i in X35.index] == [(1, 3), (2, 1), (1, 3), (2, 1)]
    assert X35.chainO.rays[0] == (1, 0) and X35.chainO.rays[-1] == (2, 5)
    assert X35.chainE.rays[-1] == (3, 5)
