from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from chainstab.calculus import chi_chain
from chainstab.core import CapExceeded, ChainError, ChainType, HNType, slot_type
from chainstab.hn import (bijection_report, enumerate_flip_types, is_maximal_type, maximal_pair_feasible,
                          maximal_summand_pattern, opposite_type, summand_pattern)
from chainstab.stability import existence_necessary, is_critical
from chainstab.walls import Segment, walls_on_segment
from test_calculus import hn_types


def line(slot, deg, length=2):
    return slot_type(length, slot, 1, deg)


WALL = is_critical((1, 1), 1, (0, 3))[0]
T = ChainType((1, 1), (2, -1))


def test_flip_plus_side():
    locus = enumerate_flip_types(T, WALL, (0, 3), "plus", 2)
    assert [ft.hn_type for ft in locus.types] == [HNType((line(1, -1), line(0, 2)))]
    ft = locus.types[0]
    assert (ft.stratum_dim, ft.codim, ft.maximal) == (2, 2, False)


def test_flip_minus_side():
    locus = enumerate_flip_types(T, WALL, (0, 3), "minus", 2)
    assert [ft.hn_type for ft in locus.types] == [HNType((line(0, 2), line(1, -1)))]
    ft = locus.types[0]
    assert ft.codim == 0 and ft.maximal
    assert str(ft.verdict.pattern) == "Case1(j=0)"


def test_flip_integrality_filter():
    t = ChainType((1, 1), (1, 0))
    assert enumerate_flip_types(t, WALL, (0, 3), "plus", 2).types == ()
    assert enumerate_flip_types(t, WALL, (0, 3), "plus", 2).to_json()["types"] == []


def test_flip_errors():
    with pytest.raises(ChainError):
        enumerate_flip_types(T, WALL, (0, 4), "plus", 2)
    with pytest.raises(ChainError):
        enumerate_flip_types(T, WALL, (0, 3), "plus", 2, window=-1)
    with pytest.raises(ChainError):
        enumerate_flip_types(ChainType((1, 1), (0, 0)), WALL, (0, 3), "plus", 2)


def test_flip_window_cap():
    t = ChainType((2, 1), (-2, -3))
    w = is_critical(t.ranks, t.degree, (0, 5))[0]
    assert len(enumerate_flip_types(t, w, (0, 5), "plus", 2).types) == 1
    with pytest.raises(CapExceeded):
        enumerate_flip_types(t, w, (0, 5), "plus", 2, window=1)


def test_opposite_examples():
    a, b = line(0, 2), line(1, -1)
    assert opposite_type(HNType((a, b))) == HNType((b, a))
    assert opposite_type(HNType((a,))) == HNType((a,))


@given(hn_types())
def test_opposite_involution(t):
    assert opposite_type(opposite_type(t)) == t


def test_maximal_examples():
    v = is_maximal_type(HNType((line(0, 2), line(1, -1))), 2)
    assert v.maximal and str(v.pattern) == "Case1(j=0)"
    v = is_maximal_type(HNType((line(1, -1), line(0, 2))), 2)
    assert not v.chi_vanishing and not v.maximal
    assert chi_chain(line(1, -1), line(0, 2), 2) == -2
    for g in (2, 3, 4):
        # d'_0 - d''_1 = g - 1
        v = is_maximal_type(HNType((line(1, 0), line(0, g - 1))), g)
        assert v.chi_vanishing and not v.rank_iso and not v.maximal
    assert not is_maximal_type(HNType((T,)), 2).maximal


def test_pair_examples():
    assert maximal_pair_feasible(ChainType((1, 0), (0, 0)), ChainType((0, 1), (0, 0)))
    assert not maximal_pair_feasible(ChainType((0, 1), (0, 0)), ChainType((1, 0), (0, 0)))
    assert maximal_pair_feasible(ChainType((1, 1), (5, 5)), ChainType((1, 0), (0, 0)))


@st.composite
def pairs(draw):
    length = draw(st.integers(1, 4))
    out = []
    for _ in range(2):
        ranks = draw(st.lists(st.integers(0, 2), min_size=length, max_size=length)
                     .filter(lambda r: sum(r) > 0))
        degs = [draw(st.integers(-2, 2)) if n else 0 for n in ranks]
        out.append(ChainType(tuple(ranks), tuple(degs)))
    return out


@given(pairs())
def test_feasible_pairs_have_a_zero_slot(p):
    e2, e1 = p
    if maximal_pair_feasible(e2, e1):
        assert any(a == 0 or b == 0 for a, b in zip(e2.ranks, e1.ranks))


def test_pattern_examples():
    pat = maximal_summand_pattern(HNType((line(0, 0), line(1, 0))))
    assert str(pat) == "Case1(j=0)"
    pat = summand_pattern(ChainType((1, 1, 1), (0, 0, 0)), ChainType((1, 1, 0), (0, 0, 0)))
    assert pat.kind == "Case2" and dict(pat.params)["k"] == 2
    assert pat.summand == ChainType((1, 1, 1), (0, 0, 0))
    pat = summand_pattern(slot_type(3, 0, 1, 0), slot_type(3, 2, 1, 0))
    assert not pat and pat.reason == "multi-wall configuration"


def _random_walk_walls():
    cases = []
    for ranks in [(1, 1), (1, 2), (2, 1), (1, 1, 1)]:
        length = len(ranks)
        start = tuple(Fraction(5, 2) * i + Fraction(i * i, 7) for i in range(length))
        direction = tuple(Fraction(i) for i in range(length))
        for degs in product(range(-2, 3), repeat=length):
            t = ChainType(ranks, degs)
            seg = Segment(start, direction, 6)
            for c in walls_on_segment(ranks, t.degree, seg).crossings:
                if not c.multi_wall:
                    cases.append((t, c.walls[0], seg.point(c.t), direction))
    return cases


CASES = _random_walk_walls()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CASES))
def test_flip_invariants(case):
    t, wall, alpha0, direction = case
    plus = enumerate_flip_types(t, wall, alpha0, "plus", 2, direction=direction)
    minus = enumerate_flip_types(t, wall, alpha0, "minus", 2, direction=direction)
    rep = bijection_report(plus, minus)
    assert rep.two_sided
    for ft in plus.maximal_types:
        assert opposite_type(ft.hn_type) in minus.hn_types
    for locus in (plus, minus):
        assert locus.violations == ()
        for ft in locus.types:
            assert ft.codim >= 0
            assert (ft.codim == 0) == ft.verdict.chi_vanishing
            if ft.maximal:
                assert ft.verdict.chi_vanishing and ft.verdict.pattern
            assert ft.hn_type.total == t
            for b in ft.hn_type.blocks:
                assert Fraction(b.degree + sum(a * n for a, n in zip(alpha0, b.ranks)),
                                b.rank) == Fraction(t.degree + sum(
                                    a * n for a, n in zip(alpha0, t.ranks)), t.rank)
                side = 1 if locus.side == "plus" else -1
                assert existence_necessary(b, alpha0, direction=direction, side=side)


def test_opposite_matching_needs_two_sided_blocks():
    # the quotient block (1,1;2,-1) sits on the wall itself: semistable just
    # above it, unstable just below, so the reversed filtration cannot occur
    t = ChainType((1, 2), (2, -2))
    w = is_critical(t.ranks, t.degree, (0, 3))[0]
    plus = enumerate_flip_types(t, w, (0, 3), "plus", 2)
    minus = enumerate_flip_types(t, w, (0, 3), "minus", 2)
    odd = HNType((ChainType((0, 1), (0, -1)), ChainType((1, 1), (2, -1))))
    assert odd in plus.hn_types
    assert opposite_type(odd) not in minus.hn_types
    rep = bijection_report(plus, minus)
    assert not rep.full and rep.two_sided
    assert rep.unmatched_plus == (str(odd),)


def test_all_sampled_walls_match_two_sided():
    for t, wall, alpha0, direction in CASES:
        plus = enumerate_flip_types(t, wall, alpha0, "plus", 2, direction=direction)
        minus = enumerate_flip_types(t, wall, alpha0, "minus", 2, direction=direction)
        assert bijection_report(plus, minus).two_sided, (t, alpha0)
