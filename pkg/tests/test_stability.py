from fractions import Fraction
from math import gcd

from hypothesis import given, strategies as st

import oracles
from chainstab.atlas import compositions
from chainstab.core import ChainType, alpha_higgs
from chainstab.stability import (Wall, existence_necessary, is_critical,
                                 sub_rank_vectors, test_chains)
from chainstab.calculus import slope
from test_core import chain_types


def test_test_chains_rank_11():
    tcs = test_chains(ChainType((1, 1), (3, 7)))
    assert [tc.label for tc in tcs] == ["Trunc(0)", "S(0,1)", "Q(0,1)"]
    assert tcs[0].induced_type == ChainType((1, 0), (3, 0))
    assert tcs[1].induced_type == ChainType((1, 1), (7, 7))
    assert tcs[2].induced_type == ChainType((1, 1), (3, 3))


def test_test_chains_rank_conditions():
    labels = [tc.label for tc in test_chains(ChainType((1, 2), (0, 0)))]
    assert "S(0,1)" not in labels and "Q(0,1)" in labels
    assert test_chains(ChainType((3,), (1,))) == []


def test_existence_examples():
    ok = existence_necessary(ChainType((1, 1), (1, 0)), (0, 4), 2)
    assert ok and ok.above_higgs
    bad = existence_necessary(ChainType((1, 1), (0, 1)), (0, 4), 2)
    assert not bad and bad.witness.label == "S(0,1)"
    edge = existence_necessary(ChainType((1, 1), (2, -1)), (0, 3), 2)
    assert edge and not edge.strict


def test_existence_sides():
    t = ChainType((1, 1), (2, -1))
    assert existence_necessary(t, (0, 3), direction=(0, 1), side=1)
    assert not existence_necessary(t, (0, 3), direction=(0, 1), side=-1)


@given(st.integers(-6, 6), st.integers(-6, 6), st.fractions(0, 30, max_denominator=4))
def test_rank11_matches_desk_oracle(d0, d1, a):
    got = bool(existence_necessary(ChainType((1, 1), (d0, d1)), (0, a)))
    assert got == oracles.rank11_semistable_exists(d0, d1, a)


def test_is_critical_examples():
    assert not is_critical((1, 1), 1, (0, 2))
    ws = is_critical((1, 1), 1, (0, 3))
    assert [(w.nprime, w.eprime) for w in ws] == [((0, 1), -1)]
    assert is_critical((1, 1), 0, (0, 2))


@st.composite
def ranks_and_degree(draw):
    ranks = tuple(draw(st.lists(st.integers(0, 3), min_size=1, max_size=3)
                       .filter(lambda r: sum(r) > 1)))
    return ranks, draw(st.integers(-6, 6))


@given(ranks_and_degree(), st.lists(st.fractions(-6, 6, max_denominator=3),
                                    min_size=3, max_size=3))
def test_is_critical_matches_enumeration(rd, alpha):
    ranks, D = rd
    alpha = alpha[:len(ranks)]
    walls = is_critical(ranks, D, alpha)
    brute = oracles.critical_walls(ranks, D, alpha)
    assert bool(walls) == bool(brute)
    for w in walls:
        assert (w.nprime, w.eprime) in brute
        assert w.complement().hyperplane() == w.hyperplane()
    # every brute-force wall is represented by some deduplicated one
    keys = {w.hyperplane() for w in walls}
    for nprime, e in brute:
        assert Wall(ranks, D, nprime, e).hyperplane() in keys


def test_higgs_not_critical_when_coprime():
    for n in range(1, 5):
        for comp in compositions(n):
            for g in (2, 3):
                for D in range(-4, 5):
                    if gcd(n, D) == 1:
                        chain_D = chain_total(comp, D, g)
                        assert not is_critical(comp, chain_D, alpha_higgs(len(comp), g))
    assert is_critical((1, 1), chain_total((1, 1), 0, 2), alpha_higgs(2, 2))


def chain_total(ranks, D, g):
    """Total chain degree of a Higgs type of total degree D."""
    r = len(ranks) - 1
    return D + sum(n * (r - i) * (2 * g - 2) for i, n in enumerate(ranks))


@given(chain_types(max_len=3), st.lists(st.fractions(0, 20, max_denominator=3),
                                        min_size=3, max_size=3),
       st.fractions(0, 10, max_denominator=3))
def test_failure_is_monotone(t, alpha, step):
    alpha = alpha[:t.length]
    res = existence_necessary(t, alpha)
    if res:
        return
    # moving along the gradient of the violated inequality keeps it violated
    grad = res.witness.violation_gradient(t)
    further = tuple(a + step * x for a, x in zip(alpha, grad))
    assert res.witness.violation(t, further) > 0
    assert not existence_necessary(t, further)


@given(chain_types(max_len=3), st.data())
def test_slope_sees_only_total_degree(t, data):
    alpha = [Fraction(i) for i in range(t.length)]
    shifted = list(t.degs)
    support = t.support
    if len(support) > 1:
        k = data.draw(st.integers(-5, 5))
        shifted[support[0]] += k
        shifted[support[1]] -= k
    assert slope(ChainType(t.ranks, tuple(shifted)), alpha) == slope(t, alpha)


def test_sub_rank_vectors_exclude_proportional():
    assert (1, 1) not in sub_rank_vectors((2, 2))
    assert (1, 0) in sub_rank_vectors((2, 2))
