from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramlift import ring
from ramlift.cover import char_poly, twisted_adjacency
from ramlift.perm import CapExceeded, FactorDistribution, Permutation, ZMod
from ramlift.repgroup import (
    NumericalDegeneracy,
    build_cyclic,
    build_g_m1d,
    build_matrix_group,
    build_perm,
    build_regular,
    build_sign,
    build_std,
    build_trivial,
    character_inner,
    check_homomorphism,
    check_p1,
    check_p2,
    cyclic_group,
    det_of_sum,
    exterior_power,
    g_m1d_factorization,
    g_m1d_group,
    is_pseudo_reflection,
    is_rank1,
    is_unitary,
    peter_weyl_check,
    representation_from_descriptor,
    symmetric_group,
)
from ramlift.ring import Cyclo

from conftest import connected_multigraphs


def test_group_orders():
    assert symmetric_group(4).order == 24
    assert g_m1d_group(2, 2).order == 8
    assert g_m1d_group(3, 2).order == 18
    assert cyclic_group(5).order == 5
    with pytest.raises(CapExceeded):
        symmetric_group(8)


def test_std_of_s2_is_sign():
    std, sign = build_std(2), build_sign(2)
    for g in std.group.elements:
        assert std.matrix(g) == sign.matrix(g)


@pytest.mark.parametrize(
    "rep",
    [build_std(3), build_std(4), build_perm(3), build_sign(4), build_cyclic(6), build_g_m1d(2, 2), build_g_m1d(3, 2)],
    ids=lambda r: r.name,
)
def test_builders_are_unitary_homomorphisms(rep):
    assert check_homomorphism(rep, exact=True)
    assert check_homomorphism(rep, exact=False)
    assert is_unitary(rep)


def test_character_norms():
    for r in (3, 4, 5):
        perm, std, triv = build_perm(r), build_std(r), build_trivial(symmetric_group(r))
        assert np.allclose(perm.character(), std.character() + triv.character())
        assert round(character_inner(std.character(), std.character()).real) == 1
        assert round(character_inner(perm.character(), perm.character()).real) == 2
    reg = build_regular(cyclic_group(4))
    assert round(character_inner(reg.character(), reg.character()).real) == 4


@settings(max_examples=30, deadline=None)
@given(connected_multigraphs(max_edges=4), st.data())
def test_perm_twist_factors_through_std_and_trivial(g, data):
    perms = st.permutations([0, 1, 2]).map(lambda p: Permutation(tuple(p)))
    labels = data.draw(st.lists(perms, min_size=g.num_edges, max_size=g.num_edges))
    phi_perm = char_poly(twisted_adjacency(g, labels, build_perm(3)))
    phi_std = char_poly(twisted_adjacency(g, labels, build_std(3)))
    assert phi_perm == phi_std * char_poly(g.adjacency())


def test_exterior_power_examples():
    std3 = build_std(3)
    top = exterior_power(std3, 2)
    sign = build_sign(3)
    for g in std3.group.elements:
        assert top.matrix(g) == sign.matrix(g)
    assert exterior_power(std3, 0).dim == 1
    assert exterior_power(build_std(5), 2).dim == 6
    with pytest.raises(ValueError):
        exterior_power(std3, 3)


@pytest.mark.parametrize("r,m", [(4, 2), (5, 2), (5, 3)])
def test_exterior_powers_are_homomorphisms(r, m):
    rep = exterior_power(build_std(r), m)
    assert check_homomorphism(rep)
    assert is_unitary(rep)


@pytest.mark.parametrize("desc", ["std:3", "std:4", "std:5", "cyclic:5", "gm1d:2,2", "gm1d:3,2"])
def test_p1_holds(desc):
    report = check_p1(representation_from_descriptor(desc))
    assert report.passed and all(n == 1 for n in report.norms)


def test_p1_fails_for_regular_z4():
    report = check_p1(build_regular(cyclic_group(4)))
    assert not report.passed
    assert report.norms[1] == 4


def test_p1_fails_for_perm():
    report = check_p1(build_perm(3))
    assert not report.passed and report.norms[1] == 2


@pytest.mark.parametrize("desc", ["std:3", "std:4", "sign:3", "cyclic:4", "gm1d:2,2", "gm1d:3,2"])
def test_p2_holds(desc):
    assert check_p2(representation_from_descriptor(desc)).passed


def test_p2_fails_for_minus_identity():
    rep = build_matrix_group("pm1", [[[-1, 0], [0, -1]]])
    report = check_p2(rep)
    assert (report.passed, report.image_order, report.reflections) == (False, 2, 0)


def test_p2_for_rotation_group():
    # rotations by 90 degrees generate Z/4 in SO(2), which contains no reflections
    rep = build_matrix_group("rot4", [[[0, -1], [1, 0]]])
    assert not check_p2(rep).passed


def test_pseudo_reflection_examples():
    assert is_pseudo_reflection([[0, 1], [1, 0]])
    assert is_pseudo_reflection([[Cyclo.zeta(3), 0], [0, 1]])
    assert not is_pseudo_reflection([[1, 0], [0, 1]])
    assert not is_pseudo_reflection([[-1, 0], [0, -1]])


def test_rank1_examples():
    std3 = build_std(3)
    e, t, c = Permutation.identity(3), Permutation.transposition(3, 0, 1), Permutation.cycle(3, 0, 1, 2)
    assert is_rank1(FactorDistribution.uniform([e, t]), std3)
    assert not is_rank1(FactorDistribution.uniform([e, c]), std3)
    gm = build_g_m1d(3, 2)
    assert all(is_rank1(f, gm) for f in g_m1d_factorization(3, 2).factors)


def test_g_m1d_factorization_is_uniform():
    f = g_m1d_factorization(2, 2)
    law = f.product()
    assert len(law) == 8 and all(w == Fraction(1, 8) for _, w in law.support)


def test_det_of_sum_examples():
    a = [[1, 2], [3, 4]]
    b = [[0, 1], [1, 0]]
    out = det_of_sum([a, b])
    assert out.value == out.direct == ring.det([[1, 3], [4, 4]])
    # the all-to-one partition reproduces det(a) alone
    assert any(t.value == ring.det(a) and t.rows[0] == (0, 1) for t in out.terms)
    single = det_of_sum([a])
    assert single.value == -2 and len(single.terms) == 1


_small_ints = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_det_of_sum_matches_direct(d, q, data):
    mats = [
        [[data.draw(_small_ints) for _ in range(d)] for _ in range(d)]
        for _ in range(q)
    ]
    out = det_of_sum(mats, keep_terms=False)
    assert out.value == out.direct


def test_det_of_sum_with_cyclotomic_entries():
    z = Cyclo.zeta(3)
    a = [[z, 1], [0, 1]]
    b = [[1, 0], [z, z]]
    out = det_of_sum([a, b])
    assert out.value == out.direct


def test_peter_weyl_examples():
    std3, sign3 = build_std(3), build_sign(3)
    same = peter_weyl_check(std3, std3)
    assert same.passed and same.isomorphic and same.expected_diagonal == pytest.approx(0.5)
    cross = peter_weyl_check(std3, sign3)
    assert cross.passed and not cross.isomorphic
    for k1, k2 in [(1, 2), (1, 3), (2, 5)]:
        assert peter_weyl_check(build_cyclic(6, k1), build_cyclic(6, k2)).passed
    with pytest.raises(ValueError):
        peter_weyl_check(build_perm(3), build_perm(3))


def test_peter_weyl_refuses_two_realizations_of_one_irrep():
    std = build_std(3)
    from ramlift.repgroup import Representation

    # conjugate the Helmert realization by a fixed rotation
    rot = np.array([[0.6, -0.8], [0.8, 0.6]], dtype=complex)
    twisted = Representation("std'", std.group, 2, std.matrix, unitary=lambda g: rot @ std.unitary(g) @ rot.T)
    with pytest.raises(ValueError):
        peter_weyl_check(std, twisted)


def test_degenerate_character_is_reported():
    bad = np.array([0.5, 0.5])
    from ramlift.repgroup import _rounded

    with pytest.raises(NumericalDegeneracy):
        _rounded(character_inner(bad, bad) + 0.3)


def test_descriptor_errors():
    with pytest.raises(ValueError):
        representation_from_descriptor("std")
    with pytest.raises(ValueError):
        representation_from_descriptor("foo:3")
    with pytest.raises(ValueError):
        representation_from_descriptor("gm1d:2")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 6]), st.data())
def test_cyclic_characters_are_orthonormal(m, data):
    k1 = data.draw(st.integers(0, m - 1))
    k2 = data.draw(st.integers(0, m - 1))
    v = character_inner(build_cyclic(m, k1).character(), build_cyclic(m, k2).character())
    assert abs(v - (1 if k1 == k2 else 0)) < 1e-9


def test_cyclic_matrix_entries():
    rep = build_cyclic(4)
    assert rep.matrix(ZMod(2, 4)) == ((-1,),)
    assert rep.matrix(ZMod(1, 4)) == ((Cyclo.zeta(4),),)
    assert rep.exact_charpoly_field and not build_cyclic(5).exact_charpoly_field
