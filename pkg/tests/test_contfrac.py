from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from sltcalc.contfrac import (
    classT_cf,
    euclid_data,
    eval_minus,
    eval_plus,
    minus_expand,
    plus_expand,
    riemenschneider_transform,
    tables,
)


@pytest.mark.parametrize("f, terms", [((5, 2), (2, 2)), ((3, 2), (1, 2)), ((1, 1), (1,))])
def test_plus_expand_examples(f, terms):
    assert plus_expand(Fraction(*f)).terms == terms


@pytest.mark.parametrize("f, terms", [((49, 34), (2, 2, 5, 4)), ((4, 3), (2, 2, 2)), ((2, 1), (2,))])
def test_minus_expand_examples(f, terms):
    assert minus_expand(Fraction(*f)).terms == terms


def test_eval_examples():
    assert eval_plus([2, 2]) == Fraction(5, 2)
    assert eval_minus([2, 2, 5, 4]) == Fraction(49, 34)
    assert eval_plus([5]) == 5


def test_bad_inputs():
    with pytest.raises(ValueError):
        plus_expand(Fraction(0))
    with pytest.raises(ValueError):
        plus_expand(Fraction(-3, 2))
    with pytest.raises(ValueError):
        minus_expand(Fraction(1))
    with pytest.raises(ValueError):
        eval_minus([2, 1, 3])
    with pytest.raises(ValueError):
        euclid_data(plus_expand(Fraction(5, 2)), (7, 3))


def test_euclid_tables():
    eu = euclid_data(plus_expand(Fraction(5, 2)), (5, 2))
    assert eu.remainders == (5, 2, 1, 0)
    assert eu.convP[1:] == (0 + 1, 2, 5) and eu.P(-1) == 0
    assert [eu.Q(i) for i in range(-1, 3)] == [1, 0, 1, 2]
    mi = euclid_data(minus_expand(Fraction(49, 34)))
    assert mi.remainders == (49, 34, 19, 4, 1, 0)
    assert [mi.P(i) for i in range(-1, 5)] == [0, 1, 2, 3, 13, 49]
    one = euclid_data(plus_expand(Fraction(1)))
    assert one.remainders == (1, 1, 0) and [one.P(i) for i in range(-1, 2)] == [0, 1, 1]


@given(st.integers(2, 3000), st.data())
def test_round_trip_and_convergents(r, data):
    s = data.draw(st.integers(1, r - 1).filter(lambda s: gcd(r, s) == 1))
    f = Fraction(r, s)
    p, m = plus_expand(f), minus_expand(f)
    assert eval_plus(p) == f and eval_minus(m) == f
    assert all(q >= 2 for q in m.terms)
    assert len(p) == 1 or p.terms[-1] >= 2
    ep, em = tables("plus", p.terms, (r, s)), tables("minus", m.terms, (r, s))
    for i in range(len(p) + 1):
        assert ep.P(i) * ep.Q(i - 1) - ep.Q(i) * ep.P(i - 1) == (-1) ** i
    for i in range(len(m) + 1):
        assert em.P(i) * em.Q(i - 1) - em.Q(i) * em.P(i - 1) == -1
    for i in range(len(m)):
        # seed identity of the minus tables
        assert em.r(1) * em.P(i) - em.r(0) * em.Q(i) == em.r(i + 1)


def test_riemenschneider_examples():
    ta, tb = riemenschneider_transform(5, 7)
    assert ta.truth == (2, 2, 3) and tb.truth == (4, 2)
    ta, tb = riemenschneider_transform(2, 3)
    assert ta.truth == (2, 2) and tb.truth == (3,)


def test_riemenschneider_tail():
    # a/b = [2, 2]: the printed rule appends q_k + 1 twos to m/b
    _, printed = riemenschneider_transform(5, 7, "printed")
    assert printed.predicted == (4, 2, 2, 2) and printed.mismatches == (2, 3)
    _, fixed = riemenschneider_transform(5, 7, "corrected")
    assert fixed.agrees


def test_riemenschneider_sweep():
    for m in range(3, 201):
        for a in range(m // 2 + 1, m):
            if gcd(a, m) != 1:
                continue
            ta, tb = riemenschneider_transform(a, m, "corrected")
            assert eval_minus(ta.truth) == Fraction(m, a)
            assert eval_minus(tb.truth) == Fraction(m, m - a)
            assert ta.agrees and tb.agrees
            _, printed = riemenschneider_transform(a, m, "printed")
            k = len(plus_expand(Fraction(a, m - a)))
            assert printed.agrees == (k % 2 == 1)


def test_classT_examples():
    t = classT_cf(5, 2, 1)
    assert t.truth == (2, 3, 1, 3) and t.agrees
    assert classT_cf(2, 1, 2).truth == (1, 1, 1, 3)
    t = classT_cf(2, 1, 1)
    assert t.truth == (1, 4) and not t.supported and t.predicted is None


def test_classT_sweep():
    for m in range(3, 80):
        for a in range(m // 2 + 1, m):
            if gcd(a, m) != 1:
                continue
            k = len(plus_expand(Fraction(a, m - a)))
            for d in (1, 2, 3):
                t = classT_cf(a, m - a, d)
                assert t.supported == (k > 1)
                if t.supported:
                    assert t.agrees
                    assert len(t.truth) == (2 * k if d == 1 else 2 * k + 2)


def test_classT_rejects():
    with pytest.raises(ValueError):
        classT_cf(2, 5, 1)
    with pytest.raises(ValueError):
        classT_cf(4, 2, 1)
