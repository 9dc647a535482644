import warnings

import pytest
from hypothesis import given, strategies as st

import oracles
from chainstab.atlas import _integer_screen, compositions, enumerate_components, wt_order_dag
from chainstab.calculus import higgs_to_chain
from chainstab.core import CapExceeded, HiggsFixedType, alpha_higgs
from chainstab.stability import existence_necessary


def summary(atlas):
    return sorted((c.higgs.ranks, c.higgs.degs, c.wt) for c in atlas.components)


def test_rank2_genus2():
    a = enumerate_components(2, 1, 2)
    assert summary(a) == sorted([((2,), (1,), 0), ((1, 1), (0, 1), -2)])
    names = {i: c.name for i, c in enumerate(a.components)}
    assert [(names[u], names[v]) for u, v in a.edges] == [("(1,1),(0,1)", "(2),(1)")]


def test_rank2_genus3():
    a = enumerate_components(2, 1, 3)
    assert summary(a) == sorted([((2,), (1,), 0), ((1, 1), (0, 1), -2),
                                 ((1, 1), (-1, 2), -6)])
    assert len(a.edges) == 3
    wts = [a.components[i].wt for i in a.order()]
    assert wts == [-6, -2, 0]


def test_rank1():
    for D in (-3, 0, 5):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            a = enumerate_components(1, D, 2)
        assert summary(a) == [((1,), (D,), 0)]
        assert a.edges == []


def test_count_matches_classical(g=None):
    for g in (2, 3, 4):
        for D in (1, 3, -1):
            assert len(enumerate_components(2, D, g).components) == oracles.rank2_census(D, g)


def test_non_coprime_warns():
    with pytest.warns(UserWarning):
        enumerate_components(2, 0, 2)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_components(2, 1, 4, cap=2)


@pytest.mark.parametrize("n,D,g", [(2, 1, 2), (3, 1, 2), (3, 2, 2), (3, 1, 3), (4, 1, 2)])
def test_atlas_invariants(n, D, g):
    a = enumerate_components(n, D, g)
    cs = a.components
    top = [c for c in cs if c.wt == 0]
    assert len(top) == 1 and top[0].higgs.ranks == (n,)
    assert all(c.wt < 0 for c in cs if c is not top[0])
    for u, v in a.edges:
        assert cs[u].wt < cs[v].wt and u != v
    # acyclic: edges go forward in the wt linear extension
    pos = {i: k for k, i in enumerate(a.order())}
    assert all(pos[u] < pos[v] for u, v in a.edges)
    for c in cs:
        res = existence_necessary(c.chain, alpha_higgs(c.chain.length, g))
        assert res and res.strict
    assert wt_order_dag(a).edges == a.edges


@given(st.sampled_from([c for n in (2, 3) for c in compositions(n)]),
       st.lists(st.integers(-8, 8), min_size=3, max_size=3), st.integers(2, 3))
def test_integer_screen_agrees(ranks, degs, g):
    degs = tuple(degs[:len(ranks)])
    c = higgs_to_chain(HiggsFixedType(ranks, degs), g)
    assert _integer_screen(ranks, g)(degs) == bool(existence_necessary(c, alpha_higgs(len(ranks), g)))


def test_dot():
    dot = enumerate_components(2, 1, 2).to_dot()
    assert dot.count("->") == 1
    assert dot.count("[label=") == 2
    assert dot.startswith("digraph")
