from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramlift.perm import (
    CapExceeded,
    FactorDistribution,
    NotGenerating,
    Permutation,
    ZMod,
    convolution,
    cyclic_uniform,
    lazy_walk_factorization,
    swap_factorization,
    uniform_sr,
    xyz_s3,
)
from ramlift.repgroup import build_cyclic, build_std, is_rank1

from conftest import permutations_of


@settings(max_examples=100, deadline=None)
@given(permutations_of(5), permutations_of(5), permutations_of(5))
def test_group_axioms(a, b, c):
    e = Permutation.identity(5)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    assert (a * b)(0) == b(a(0))


@settings(max_examples=50, deadline=None)
@given(permutations_of(4), permutations_of(4))
def test_matrix_is_a_homomorphism(a, b):
    pa, pb, pab = a.matrix(), b.matrix(), (a * b).matrix()
    prod = [[sum(pa[i][k] * pb[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert prod == pab


def test_uniform_sr():
    assert uniform_sr(1).support == ((Permutation((0,)), Fraction(1)),)
    two = uniform_sr(2).as_dict()
    assert two == {Permutation((0, 1)): Fraction(1, 2), Permutation((1, 0)): Fraction(1, 2)}
    assert len(uniform_sr(3)) == 6 and all(w == Fraction(1, 6) for _, w in uniform_sr(3).support)
    with pytest.raises(CapExceeded):
        uniform_sr(9)


def test_distribution_validation():
    with pytest.raises(ValueError):
        FactorDistribution(((ZMod(0, 2), Fraction(1, 2)),))
    with pytest.raises(ValueError):
        FactorDistribution(((ZMod(0, 2), Fraction(1, 2)), (ZMod(0, 2), Fraction(1, 2))))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_swap_factorization_is_uniform(r):
    f = swap_factorization(r)
    assert len(f.factors) == r * (r - 1) // 2
    assert f.product().same_law(uniform_sr(r))
    std = build_std(r)
    assert all(is_rank1(x, std) for x in f.factors)
    assert all(sum(w for _, w in x.support) == 1 for x in f.factors)


def test_swap_factorization_base_case():
    (only,) = swap_factorization(2).factors
    assert only.as_dict() == {Permutation((0, 1)): Fraction(1, 2), Permutation((1, 0)): Fraction(1, 2)}
    with pytest.raises(ValueError):
        swap_factorization(1)


def test_xyz():
    f = xyz_s3()
    assert all(len(x) == 2 for x in f.factors)
    assert f.product().same_law(uniform_sr(3))
    assert not f.factors[0].same_law(uniform_sr(3))
    assert all(is_rank1(x, build_std(3)) for x in f.factors)


def test_cyclic_uniform():
    assert cyclic_uniform(2).factors[0].as_dict() == {ZMod(0, 2): Fraction(1, 2), ZMod(1, 2): Fraction(1, 2)}
    assert all(w == Fraction(1, 3) for _, w in cyclic_uniform(3).factors[0].support)
    assert len(cyclic_uniform(6).factors[0]) == 6
    for m in (2, 3, 5):
        assert is_rank1(cyclic_uniform(m).factors[0], build_cyclic(m))


def test_lazy_walk_z2_one_step():
    f = lazy_walk_factorization([ZMod(1, 2)], 1, ZMod(0, 2))
    assert f.factors[0].as_dict() == {ZMod(1, 2): Fraction(2, 3), ZMod(0, 2): Fraction(1, 3)}
    assert f.tv_slack == Fraction(1, 6)


def test_lazy_walk_s3_converges_and_sweeps_contract():
    gens = [Permutation.transposition(3, 0, 1), Permutation.transposition(3, 1, 2)]
    e = Permutation.identity(3)
    assert lazy_walk_factorization(gens, 30, e).tv_slack < Fraction(1, 10**6)
    tvs = [lazy_walk_factorization(gens, 2 * k, e).tv_slack for k in range(1, 8)]
    assert all(b <= a for a, b in zip(tvs, tvs[1:]))


def test_lazy_walk_requires_generation():
    from ramlift.repgroup import symmetric_group

    with pytest.raises(NotGenerating):
        lazy_walk_factorization([Permutation.transposition(3, 0, 1)], 3, Permutation.identity(3), symmetric_group(3).elements)


def test_convolution_weights_sum_to_one():
    d = convolution(swap_factorization(4).factors)
    assert sum(w for _, w in d.support) == 1
