import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from ramlift import graph as G
from ramlift import poly as P
from ramlift.acceptance import NON_REAL_MIXTURE, non_interlacing_state
from ramlift.corpus import load_named
from ramlift.cover import new_char_poly
from ramlift.graph import OrientedMultigraph
from ramlift.matching import d_matching_poly, matching_poly
from ramlift.perm import CapExceeded, Permutation, swap_factorization, uniform_sr
from ramlift.poly import RatPoly
from ramlift.repgroup import build_sign, build_std
from ramlift.search import (
    InterlacingViolation,
    LoopsNotSupported,
    SearchState,
    ball_spectral_radius,
    expected_char_poly,
    find_lift,
    find_lift_group,
    greedy_step,
    group_setup,
    lift_regular_with_loops,
    parse_tol,
    rho,
    transport_subdivision_labeling,
    verify_certificate,
)

from conftest import connected_multigraphs

X = RatPoly.x()


# rho


def test_rho_regular_and_biregular():
    r3 = rho(load_named("theta"))
    assert r3.poly == X**2 - 8 and r3.lower**2 <= 8 <= r3.upper**2
    sub = rho(load_named("subdivided_theta"))
    target = math.sqrt(2) + 1
    assert sub.method == "closed-form" and sub.lower <= target <= sub.upper
    sub_k4 = rho(load_named("subdivided_k4"))
    assert sub_k4.lower <= target <= sub_k4.upper


def test_rho_of_a_tree_is_its_own_spectral_radius():
    b = rho(G.path(3))
    assert b.poly == X**3 - 2 * X
    assert b.lower**2 <= 2 <= b.upper**2
    assert rho(G.k2()).upper == 1


def test_rho_ball_iteration_bracket():
    b = rho(load_named("k4me"))
    assert b.method == "ball-iteration" and not b.exact
    # irregular: strictly between the average-degree and max-degree tree bounds
    assert 2 * math.sqrt(5 / 4) < b.lower < b.upper
    assert b.upper**2 >= 8 and b.upper - Fraction(2) * Fraction(math.sqrt(2)) < Fraction(1, 2**30)


def test_ball_radius_monotone():
    g = load_named("k4me")
    vals = [ball_spectral_radius(g, 0, k) for k in range(1, 8)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    # on a regular graph the balls approach 2 sqrt(k-1) from below
    theta = load_named("theta")
    assert ball_spectral_radius(theta, 0, 30) < 2 * math.sqrt(2)
    assert ball_spectral_radius(theta, 0, 30) > 2.7


def test_parse_tol():
    assert parse_tol("1/1000") == Fraction(1, 1000)
    assert parse_tol("2^-20") == Fraction(1, 2**20)
    assert parse_tol("0.5") == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_tol("-1")


# expectations


def test_expected_sign_on_k2():
    state = SearchState.initial(G.k2(), build_sign(2), [swap_factorization(2)])
    assert expected_char_poly(state) == X**2 - 1


def test_expected_uniform_s3_on_triangle_is_two_matching_poly():
    c3 = G.cycle(3)
    state = SearchState.initial(c3, build_std(3), [swap_factorization(3)] * 3)
    assert expected_char_poly(state) == d_matching_poly(c3, 2)


def test_fully_fixed_state_is_the_char_poly():
    c3 = G.cycle(3)
    state = SearchState.initial(c3, build_std(3), [swap_factorization(3)] * 3)
    while not state.done:
        state = state.with_choice(state.next_factor().elements[-1])
    labels = state.labeling()
    assert expected_char_poly(state) == new_char_poly(c3, labels)


def test_expectation_cap():
    g = load_named("k4me")
    state = SearchState.initial(g, build_std(4), [swap_factorization(4)] * g.num_edges, cap=100)
    with pytest.raises(CapExceeded, match="cap 100"):
        expected_char_poly(state)


@settings(max_examples=15, deadline=None)
@given(connected_multigraphs(max_vertices=3, max_edges=3, loops=False))
def test_expected_poly_matches_exhaustive_average(g):
    rep = build_std(3)
    state = SearchState.initial(g, rep, [swap_factorization(3)] * g.num_edges)
    total = RatPoly([])
    for labels in product(uniform_sr(3).elements, repeat=g.num_edges):
        total = total + new_char_poly(g, labels)
    assert expected_char_poly(state) == total * Fraction(1, 6**g.num_edges)


# greedy steps


def test_k2_tie_goes_to_first_support_element():
    state = SearchState.initial(G.k2(), build_std(2), [swap_factorization(2)])
    step = greedy_step(state)
    assert step.branch_polys[0] == step.branch_polys[1] == X**2 - 1
    assert step.chosen == 0 and step.value == state.next_factor().elements[0]


def test_triangle_branches_bracket_the_mixture():
    c3 = G.cycle(3)
    state = SearchState.initial(c3, build_std(3), [swap_factorization(3)] * 3)
    step = greedy_step(state)
    # the mixture is the weighted average of the branches
    f = state.next_factor()
    avg = RatPoly([])
    for (_, w), p in zip(f.support, step.branch_polys):
        avg = avg + p * w
    assert avg == step.mixture
    assert P.common_interlacing(list(step.branch_polys))
    assert P.compare_largest_roots(step.branch_polys[step.chosen], step.mixture) <= 0


def test_non_real_rooted_mixture_is_rejected():
    state = non_interlacing_state()
    assert expected_char_poly(state) == NON_REAL_MIXTURE
    assert not P.is_real_rooted(NON_REAL_MIXTURE)
    with pytest.raises(InterlacingViolation):
        greedy_step(state.with_choice(Permutation.identity(3)))


# full lifts


def test_theta_double_cover_is_optimal_among_signings():
    theta = load_named("theta")
    cert = find_lift(theta, 2)
    best = min(
        (P.largest_root(new_char_poly(theta, s)) for s in product(uniform_sr(2).elements, repeat=3)),
        key=lambda b: b.upper,
    )
    assert cert.new_poly == X**2 - 1
    assert cert.new_root.upper == best.upper == 1
    assert cert.verdict == "one-sided-ramanujan" and cert.two_sided is True


def test_triangle_three_cover():
    c3 = G.cycle(3)
    cert = find_lift(c3, 3)
    assert cert.verdict == "one-sided-ramanujan"
    assert P.compare_largest_roots(cert.new_poly, cert.dmatching_poly) <= 0
    assert cert.new_poly == new_char_poly(c3, cert.labeling)
    assert cert.history[0] == d_matching_poly(c3, 2)


def test_history_is_monotone():
    cert = find_lift(load_named("k4me"), 3)
    tops = cert.history
    for before, after in zip(tops, tops[1:]):
        assert P.compare_largest_roots(after, before) <= 0
    assert cert.new_root.upper <= cert.rho.upper


def test_trivial_cover():
    cert = find_lift(G.cycle(3), 1)
    assert cert.verdict == "one-sided-ramanujan" and cert.new_poly == RatPoly.const(1)


def test_cyclic_lifts():
    cert = find_lift_group(G.cycle(3), "cyclic:3")
    assert cert.new_poly == X**3 - 3 * X + 1
    assert cert.verdict == "one-sided-ramanujan" and cert.exact
    assert cert.history[0] == matching_poly(G.cycle(3))
    five = find_lift_group(G.cycle(3), "cyclic:5")
    assert not five.exact and five.verdict in ("one-sided-ramanujan", "one-sided-vs-dmatching")


def test_gm1d_lift():
    cert = find_lift_group(G.k2(2), "gm1d:2,2")
    assert cert.history[0] == d_matching_poly(G.k2(2), 2)
    assert cert.verdict != "fail"


def test_lazy_factorization_reports_slack():
    cert = find_lift_group(G.cycle(3), "cyclic:4", factorization="lazy:2")
    # two lazy steps on Z/4 sit at TV distance 1/12 from uniform
    assert cert.epsilon == Fraction(3, 12)
    # one lazy step on Z/3 is already uniform
    _, fact = group_setup("cyclic:3", "lazy:1")
    assert fact.tv_slack == 0


def test_gmkd_is_rejected():
    with pytest.raises(ValueError):
        group_setup("gmkd:4,2,2")


def test_loops_rejected_for_std():
    with pytest.raises(LoopsNotSupported):
        find_lift(G.bouquet(1), 2)
    with pytest.raises(LoopsNotSupported):
        find_lift_group(G.bouquet(2), "gm1d:2,2")


def test_one_dimensional_lift_allows_loops():
    cert = find_lift_group(G.bouquet(1), "cyclic:4")
    assert cert.new_poly == X + 2


def test_bouquet_lift_stays_within_two():
    cert = lift_regular_with_loops(G.bouquet(1), 3)
    assert cert.verdict == "one-sided-ramanujan"
    assert P.max_root_at_most(cert.new_poly, Fraction(2))
    two = lift_regular_with_loops(G.bouquet(2), 2)
    assert P.compare_largest_roots(two.new_poly, X**2 - 12) <= 0


def test_transport_on_subdivision():
    t = Permutation.transposition(3, 0, 1)
    c = Permutation.cycle(3, 0, 1, 2)
    out = transport_subdivision_labeling(G.bouquet(1), [t, c])
    assert out == (t.inverse() * c,)


@settings(max_examples=10, deadline=None)
@given(connected_multigraphs(max_vertices=4, max_edges=4, loops=False))
def test_bipartite_new_spectrum_is_symmetric(g):
    cert = find_lift(g, 2)
    if G.classify(g).bipartite:
        p = cert.new_poly
        assert p.is_even() or p.is_odd()
        assert cert.two_sided is not None
    else:
        assert cert.two_sided is None
    assert cert.verdict != "fail"


def test_certificate_round_trip():
    cert = find_lift(load_named("theta"), 3)
    mismatches, again = verify_certificate(cert.to_json())
    assert mismatches == [] and again.verdict == cert.verdict


def test_disconnected_base_is_rejected():
    with pytest.raises(ValueError):
        find_lift(OrientedMultigraph(4, ((0, 1), (2, 3))), 2)
