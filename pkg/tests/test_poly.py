from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ramlift import poly as P
from ramlift.poly import RatPoly

from conftest import poly_from_ints, real_rooted_polys, small_rationals

X = RatPoly.x()


def test_div_exact_examples():
    f = X**2 - 1
    assert P.div_exact(f * f, f) == f
    assert P.div_exact(poly_from_ints(1, 0, -5, 0, 4), X**2 - 1) == X**2 - 4
    with pytest.raises(P.NotDivisible):
        P.div_exact(X**2 + 1, X - 1)


def test_is_real_rooted_examples():
    assert P.is_real_rooted(X**2 - 2)
    assert not P.is_real_rooted(X**2 + 1)
    mixture = ((X**2 - 4) ** 2 + (X**2 - 1) ** 2) * Fraction(1, 2)
    assert not P.is_real_rooted(mixture)


def test_largest_root_examples():
    b = P.largest_root(X**2 - 3, Fraction(1, 2**30))
    assert b.lower**2 <= 3 <= b.upper**2
    assert abs(b.midpoint() - 1.7320508) < 1e-7
    assert b.width <= Fraction(1, 2**30)
    # matching polynomial of the triangle
    b = P.largest_root(X**3 - 3 * X)
    assert abs(b.midpoint() - 3**0.5) < 1e-9
    b = P.largest_root(X - 5)
    assert (b.lower, b.upper) == (5, 5)
    with pytest.raises(P.NoRealRoot):
        P.largest_root(X**2 + 1)


def test_repeated_largest_root_is_exact():
    b = P.largest_root((X - 2) ** 2 * (X + 1))
    assert (b.lower, b.upper, b.multiplicity_count) == (2, 2, 2)


def test_interlaces_examples():
    assert P.interlaces(X, X**2 - 1)
    assert not P.interlaces(X - 5, (X - 1) * (X - 3))
    with pytest.raises(ValueError):
        P.interlaces(X**2, X**2 - 1)


def test_common_interlacing_examples():
    assert P.common_interlacing([X**2 - 1, X**2 - 4])
    assert not P.common_interlacing([(X - 1) * (X - 2), (X - 3) * (X - 4)])
    f = (X - 1) * (X + 2)
    assert P.common_interlacing([f, f])


@settings(max_examples=80, deadline=None)
@given(real_rooted_polys(min_degree=2))
def test_derivative_interlaces(f):
    assert P.interlaces(f.derivative(), f)


@settings(max_examples=80, deadline=None)
@given(st.lists(small_rationals, min_size=1, max_size=4, unique=True), st.lists(small_rationals, min_size=1, max_size=4, unique=True))
def test_sturm_count_is_additive(ra, rb):
    assume(not set(ra) & set(rb))
    f, g = RatPoly.from_roots(ra), RatPoly.from_roots(rb)
    total = P.count_distinct_roots(f) + P.count_distinct_roots(g)
    assert P.count_distinct_roots(f * g) == total


@settings(max_examples=80, deadline=None)
@given(real_rooted_polys(max_degree=6), st.sampled_from([Fraction(1, 4), Fraction(1, 2**20), Fraction(1, 2**40)]))
def test_bracket_invariants(f, tol):
    b = P.largest_root(f, tol)
    assert b.width <= tol
    assert P.count_roots(f, b.upper, None) == 0
    if b.exact:
        assert f(b.upper) == 0
    else:
        assert P.count_roots(f, b.lower, b.upper) >= 1


@st.composite
def commonly_interlacing_pair(draw):
    n = draw(st.integers(1, 4))
    values = sorted(draw(st.lists(small_rationals, min_size=2 * n, max_size=2 * n)))
    fr, gr = [], []
    for k in range(n):
        lo, hi = values[2 * k], values[2 * k + 1]
        if draw(st.booleans()):
            lo, hi = hi, lo
        fr.append(lo)
        gr.append(hi)
    return RatPoly.from_roots(fr), RatPoly.from_roots(gr), sorted(fr), sorted(gr)


@settings(max_examples=60, deadline=None)
@given(commonly_interlacing_pair())
def test_convex_combinations_of_common_interlacing(pair):
    f, g, fr, gr = pair
    assert P.common_interlacing([f, g])
    for lam in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        h = f * lam + g * (1 - lam)
        assert P.is_real_rooted(h)
        # i-th smallest root of h lies in [min(f_i, g_i), max(f_i, g_i)]
        for i, (a, b) in enumerate(zip(fr, gr)):
            lo, hi = min(a, b), max(a, b)
            assert _count_below(h, lo) <= i
            assert P.count_roots(h, None, hi) >= i + 1


def _count_below(h, a):
    """Roots of h strictly less than a, with multiplicity."""
    mult, q = 0, h
    while q(a) == 0:
        q = q.derivative()
        mult += 1
    return P.count_roots(h, None, a) - mult


@st.composite
def interlacing_pair(draw):
    n = draw(st.integers(2, 4))
    values = sorted(set(draw(st.lists(small_rationals, min_size=2 * n - 1, max_size=2 * n - 1))))
    assume(len(values) == 2 * n - 1)
    return RatPoly.from_roots(values[0::2]), RatPoly.from_roots(values[1::2])


@settings(max_examples=60, deadline=None)
@given(interlacing_pair())
def test_adding_an_interlacing_poly_keeps_real_roots(pair):
    f, g = pair
    assert P.interlaces(g, f)
    alphas = [-10, -1, 0, 1, 10]
    combos = [f + g * a for a in alphas]
    for h in combos:
        assert P.is_real_rooted(h)
    # with positive leading coefficients the top root falls as alpha grows
    for lo, hi in zip(combos, combos[1:]):
        assert P.compare_largest_roots(lo, hi) >= 0


def test_json_round_trip():
    p = RatPoly([Fraction(-178, 3), 0, 4])
    assert P.poly_from_json(P.poly_to_json(p)) == p
    assert P.poly_from_json({"coeffs": ["2", "-1/2"]}) == RatPoly([2, Fraction(-1, 2)])
    b = P.largest_root(X**2 - 2)
    assert P.bracket_from_json(P.bracket_to_json(b)) == b
