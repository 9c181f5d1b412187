import math

import pytest

from src.arrangement import (Stratum, StrataLattice, brute_force_os_dims, diagonal, generators, meet,
                             mobius_number, os_algebra, puncture, sort_with_sign)
from src.errors import ResourceGuardError


def test_generator_order_and_labels():
    gens = generators(2, 1)
    assert [gen.label for gen in gens] == ["g1^1", "g2^1", "g12"]
    assert diagonal(2, 0) == diagonal(0, 2)
    with pytest.raises(ValueError):
        diagonal(1, 1)
    assert diagonal(0, 1).relabel([2, 0]) == diagonal(0, 2)


def test_meet_merges_colors():
    F = meet(2, [puncture(0, 1), diagonal(0, 1)])
    assert F == Stratum((1, 1), ())
    assert F.rank == 2
    assert F.lies_on(puncture(1, 1))
    assert meet(2, [puncture(0, 1), puncture(0, 2)]) is None
    assert meet(3, [puncture(0, 1), puncture(1, 2), diagonal(0, 1)]) is None
    assert meet(3, []) == Stratum((0, 0, 0), ((0,), (1,), (2,)))


@pytest.mark.parametrize("n, r, ranks", [
    (2, 1, [0, 1, 1, 1, 2]),
    (3, 0, [0, 1, 1, 1, 2]),
    (1, 2, [0, 1, 1]),
])
def test_strata_counts(n, r, ranks):
    assert StrataLattice(n, r).ranks() == ranks


def test_mobius_numbers_of_braid_lattice():
    lattice = StrataLattice(3, 0)
    mu = lattice.mobius()
    assert mu[lattice.top] == 1
    assert sorted(mu.values()) == [-1, -1, -1, 1, 2]


@pytest.mark.parametrize("n, r", [(2, 1), (3, 0), (2, 2), (3, 1)])
def test_nbc_counts_match_mobius(n, r):
    algebra = os_algebra(n, r)
    mu = StrataLattice(n, r).mobius()
    for F, value in mu.items():
        assert len(algebra.basis(F)) == abs(value)


@pytest.mark.parametrize("n, r", [(3, 0), (2, 2), (3, 1), (4, 1), (3, 2)])
def test_mobius_product_formula_matches_recursion(n, r):
    lattice = StrataLattice(n, r)
    mu = lattice.mobius()
    assert all(mu[F] == mobius_number(F) for F in lattice)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_braid_arrangement_total_dimension(n):
    assert sum(os_algebra(n, 0).dims_by_rank()) == math.factorial(n)


def test_braid_poincare_polynomial():
    # prod_{k < n} (1 + k u)
    assert os_algebra(3, 0).dims_by_rank() == [1, 3, 2]
    assert os_algebra(4, 0).dims_by_rank() == [1, 6, 11, 6]


def test_arnold_relation():
    algebra = os_algebra(3, 0)
    g12, g13, g23 = (algebra.index(diagonal(0, 1)), algebra.index(diagonal(0, 2)),
                     algebra.index(diagonal(1, 2)))
    assert not algebra.is_nbc((g13, g23))
    assert algebra.normal_form((g13, g23)) == {(g12, g23): 1, (g12, g13): -1}
    assert algebra.normal_form((g23, g13)) == {(g12, g23): -1, (g12, g13): 1}
    assert algebra.multiply((g12,), (g12,)) == {}


def test_vanishing_puncture_products():
    algebra = os_algebra(1, 2)
    assert algebra.dims_by_rank() == [1, 2]
    assert algebra.normal_form((0, 1)) == {}


def test_nbc_monomials_are_normal():
    algebra = os_algebra(3, 1)
    for S in algebra.nbc:
        assert algebra.normal_form(S) == {S: 1}


def test_boundary_squares_to_zero():
    algebra = os_algebra(3, 1)
    assert algebra.boundary((0, 1)) == {(1,): 1, (0,): -1}
    for S in algebra.nbc:
        assert algebra.boundary_of_combination(algebra.boundary(S)) == {}


def test_sort_with_sign():
    assert sort_with_sign([2, 0, 1]) == (1, (0, 1, 2))
    assert sort_with_sign([1, 0]) == (-1, (0, 1))


@pytest.mark.parametrize("n, r", [(2, 0), (3, 0), (2, 1), (1, 2), (2, 2)])
def test_brute_force_os_dims_agree(n, r):
    assert brute_force_os_dims(n, r) == os_algebra(n, r).dims_by_rank()


def test_os_oracle_guard():
    with pytest.raises(ResourceGuardError) as info:
        brute_force_os_dims(5, 0, max_generators=5)
    assert info.value.size == 10
