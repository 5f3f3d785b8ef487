from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from ramlift import graph as G
from ramlift import poly as P
from ramlift.graph import classify
from ramlift.matching import (
    d_matching_poly,
    d_matching_poly_oracle,
    enumerate_multimatchings,
    matching_poly,
    weight,
)
from ramlift.perm import CapExceeded
from ramlift.poly import RatPoly
from ramlift.search import rho

from conftest import connected_multigraphs

X = RatPoly.x()


def brute_force_matching_poly(g):
    """Count edge subsets that cover no vertex twice (loops never qualify)."""
    edges = [e for e in g.edges if e[0] != e[1]]
    coeffs = [0] * (g.n + 1)
    for k in range(len(edges) + 1):
        for subset in combinations(range(len(edges)), k):
            touched = [v for j in subset for v in edges[j]]
            if len(touched) == len(set(touched)):
                coeffs[g.n - 2 * k] += (-1) ** k
    return RatPoly(coeffs)


def test_matching_poly_examples():
    assert matching_poly(G.k2()) == X**2 - 1
    assert matching_poly(G.cycle(3)) == X**3 - 3 * X
    # 5 edges and 2 perfect matchings
    assert matching_poly(G.k4_minus_edge()) == X**4 - 5 * X**2 + 2
    assert brute_force_matching_poly(G.k4_minus_edge()) == X**4 - 5 * X**2 + 2


@settings(max_examples=60, deadline=None)
@given(connected_multigraphs(max_edges=6))
def test_matching_poly_matches_brute_force(g):
    assert matching_poly(g) == brute_force_matching_poly(g)


def test_enumerate_multimatchings_examples():
    assert sorted(enumerate_multimatchings(G.k2(), 1)) == [(0,), (1,)]
    assert sorted(enumerate_multimatchings(G.k2(), 2)) == [(0,), (1,), (2,)]
    assert len(list(enumerate_multimatchings(G.cycle(3), 1))) == 4


def test_weight_examples():
    g = G.k4_minus_edge()
    assert weight(g, (0,) * 5, 3) == 1
    assert weight(G.k2(), (1,), 2) == 2
    assert weight(G.k2(), (2,), 2) == 1


def test_d_matching_examples():
    expected = RatPoly([4, 0, Fraction(-178, 3), 0, 180, 0, -189, 0, 81, 0, -15, 0, 1])
    assert d_matching_poly(G.k4_minus_edge(), 3) == expected
    assert d_matching_poly(G.k2(), 2) == X**4 - 2 * X**2 + 1
    assert d_matching_poly_oracle(G.k2(), 2) == X**4 - 2 * X**2 + 1
    assert d_matching_poly_oracle(G.cycle(3), 2) == d_matching_poly(G.cycle(3), 2)


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_edges=5))
def test_d_equal_one_is_matching_poly(g):
    assert d_matching_poly(g, 1) == matching_poly(g)
    assert d_matching_poly_oracle(g, 1) == matching_poly(g)


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_edges=4))
def test_closed_form_matches_covering_average(g):
    assert d_matching_poly(g, 2) == d_matching_poly_oracle(g, 2)
    if g.num_edges <= 3:
        assert d_matching_poly(g, 3) == d_matching_poly_oracle(g, 3)


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_edges=5))
def test_degree_and_parity(g):
    for d in (1, 2, 3):
        p = d_matching_poly(g, d)
        assert p.degree == g.n * d and p.lead == 1
        assert p.is_even() if (g.n * d) % 2 == 0 else p.is_odd()


@settings(max_examples=40, deadline=None)
@given(connected_multigraphs(max_edges=5, loops=False))
def test_real_rooted_and_inside_ramanujan_interval(g):
    bound = rho(g).poly
    for d in (1, 2, 3):
        p = d_matching_poly(g, d)
        assert P.is_real_rooted(p)
        if bound is not None:
            assert P.compare_largest_roots(p, bound) <= 0
        else:
            assert P.max_root_at_most(p, rho(g).upper)


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        d_matching_poly_oracle(G.k4_minus_edge(), 4, cap=1000)


def test_loopy_graphs_are_only_reported(corpus):
    # real-rootedness with loops is not guaranteed; record what happens without asserting
    loopy = [cg for cg in corpus if not cg.loopless]
    flags = [P.is_real_rooted(d_matching_poly(cg.graph, 2)) for cg in loopy]
    assert len(flags) == len(loopy)
