import pytest

from src.arrangement import generators
from src.catalog import affine_space, curve_open, elliptic
from src.phi import expand_punctures, phi_map, split_last_puncture


def test_expand_punctures():
    assert expand_punctures([0]) == [(1, [], 0)]
    assert expand_punctures([0, 1]) == [(-1, [(0, 1)], 0), (1, [(0, 1)], 1)]
    assert len(expand_punctures([0, 1, 2])) == 4


def test_split_last_puncture():
    gens = generators(2, 1)
    # g1^1 g12 -> -(g12) (g1^1)
    sign, others, colored = split_last_puncture((0, 2), gens, 1)
    assert sign == -1
    assert [gen.label for gen in others] == ["g12"]
    assert colored == [0]


def test_phi_needs_a_puncture(line):
    with pytest.raises(ValueError):
        phi_map(line, 0, 2)


@pytest.mark.parametrize("model, r, n", [
    (affine_space(1), 1, 2),
    (affine_space(1), 1, 3),
    (affine_space(1), 2, 2),
    (curve_open(1, 1), 1, 2),
    (elliptic().punctured(), 2, 2),
])
def test_phi_is_bijective_and_commutes(model, r, n):
    phi = phi_map(model, r, n)
    for key in phi.blocks:
        assert phi.is_square(key)
        assert phi.target.block_dim(key) == phi.source_dim(key)
    assert phi.is_bijective()
    assert phi.commutation_failures() == []


def test_phi_dimension_identity_on_punctured_line(line):
    phi = phi_map(line, 1, 2)
    total_source = len(phi.source_x.elements) + 2 * len(phi.source_sub.elements)
    assert len(phi.target.elements) == total_source == 6


def test_phi_on_compact_base_is_bijective(elliptic_curve):
    phi = phi_map(elliptic_curve, 1, 2)
    assert phi.is_bijective()
    assert phi.column_labels


@pytest.mark.slow
@pytest.mark.parametrize("model, r", [(affine_space(1), 2), (elliptic().punctured(), 1)])
def test_phi_three_points(model, r):
    phi = phi_map(model, r, 3)
    assert phi.is_bijective()
    assert phi.commutation_failures() == []
