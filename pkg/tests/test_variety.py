import json
from fractions import Fraction

import pytest

from src.catalog import CATALOG, catalog
from src.errors import ModelError
from src.variety import (CohClass, HodgeType, VarietyModel, algebra_violations, load_model,
                         model_from_dict, require_valid, save_model, tensor_multiply, tensor_power,
                         validate)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_models_validate(name):
    assert validate(catalog(name)) == []


def test_hodge_type_arithmetic():
    assert HodgeType(1, 0) + HodgeType(0, 1) == HodgeType(1, 1)
    assert HodgeType(1, 1).twist(2) == HodgeType(3, 3)
    assert HodgeType(2, 1).weight == 3


def test_elliptic_ring(elliptic_curve):
    model = elliptic_curve
    a, b, pt = model.index["a"], model.index["b"], model.index["pt"]
    assert model.multiply(a, b) == {pt: -1}
    assert model.multiply(b, a) == {pt: 1}
    assert model.multiply(a, a) == {}
    assert model.multiply(model.unit, b) == {b: 1}
    assert model.poincare_polynomial() == [1, 2, 1]


def test_tensor_multiply_koszul_sign(elliptic_curve):
    model = elliptic_curve
    u, a = model.unit, model.index["a"]
    assert tensor_multiply(model, (a, u), (u, a)) == {(a, a): 1}
    assert tensor_multiply(model, (u, a), (a, u)) == {(a, a): -1}


def test_tensor_power_poincare(elliptic_curve):
    power = tensor_power(elliptic_curve, 2)
    assert power.poincare_polynomial() == [1, 4, 6, 4, 1]
    assert power.poincare_polynomial() == power.expected_poincare_polynomial()
    assert len(power.basis()) == 16


@pytest.mark.parametrize("n", [1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_tensor_power_is_a_graded_commutative_algebra(elliptic_curve, n):
    power = tensor_power(elliptic_curve, n)
    assert algebra_violations(power.basis(), power.degree, power.multiply, power.unit) == []


def test_algebra_violations_catch_a_sign_error(elliptic_curve):
    power = tensor_power(elliptic_curve, 2)

    def unsigned(x, y):
        return {key: abs(value) for key, value in power.multiply(x, y).items()}

    problems = algebra_violations(power.basis(), power.degree, unsigned, power.unit, "E^2: ")
    assert any(problem.startswith("E^2: graded commutativity fails") for problem in problems)


def test_punctured_drops_top_classes(elliptic_curve):
    model = elliptic_curve.punctured()
    assert not model.compact
    assert [cls.name for cls in model.classes] == ["1", "a", "b"]
    assert model.point_class == {}
    assert model.slope == 1
    assert validate(model) == []
    with pytest.raises(ModelError):
        model.punctured()


def test_validate_reports_slope_and_duplicates():
    unit = CohClass("1", 0, HodgeType(0, 0))
    bad = VarietyModel(1, False, [unit, CohClass("c", 1, HodgeType(0, 0)),
                                  CohClass("c", 1, HodgeType(1, 1))], slope=2)
    problems = validate(bad)
    assert any("duplicate" in problem for problem in problems)

    sloped = VarietyModel(1, False, [unit, CohClass("c", 1, HodgeType(0, 0))], slope=2)
    problems = validate(sloped)
    assert any("slope" in problem for problem in problems)
    with pytest.raises(ModelError) as info:
        require_valid(sloped)
    assert info.value.problems == problems


def test_validate_rejects_broken_diagonal():
    unit = CohClass("1", 0, HodgeType(0, 0))
    pt = CohClass("pt", 2, HodgeType(1, 1))
    lopsided = VarietyModel(1, True, [unit, pt], diagonal=[(1, "pt", "1")], point_class={"pt": 1})
    assert any("symmetric" in problem for problem in validate(lopsided))


def test_validate_checks_diagonal_absorption(elliptic_curve):
    # symmetric, right degree and type, but missing the a(x)b - b(x)a part
    diagonal = [(1, "pt", "1"), (1, "1", "pt")]
    model = VarietyModel(1, True, elliptic_curve.classes, elliptic_curve.products, diagonal,
                         {"pt": 1}, slope=1, name="elliptic_without_h1_diagonal")
    problems = validate(model)
    assert "diagonal class does not absorb a: [Delta](a(x)1) != [Delta](1(x)a)" in problems
    assert not any("symmetric" in problem for problem in problems)


def test_noncompact_model_cannot_carry_top_degree():
    unit = CohClass("1", 0, HodgeType(0, 0))
    pt = CohClass("pt", 2, HodgeType(1, 1))
    model = VarietyModel(1, False, [unit, pt])
    assert any("noncompact" in problem for problem in validate(model))


def test_model_file_round_trip(tmp_path, elliptic_curve):
    path = tmp_path / "elliptic.json"
    save_model(elliptic_curve, str(path))
    loaded = load_model(str(path))
    assert loaded.name == "elliptic"
    assert loaded.classes == elliptic_curve.classes
    assert loaded.products == elliptic_curve.products
    assert loaded.point_class == {"pt": Fraction(1)}


def test_model_file_errors(tmp_path):
    with pytest.raises(ModelError):
        model_from_dict({"dim_c": 1, "compact": False, "classes": [], "colour": 1})
    with pytest.raises(ModelError):
        model_from_dict({"dim_c": 1, "classes": []})

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ModelError):
        load_model(str(broken))

    invalid = tmp_path / "invalid.json"
    invalid.write_text(json.dumps({"dim_c": 1, "compact": False, "classes": [
        {"name": "1", "degree": 0, "p": 0, "q": 0},
        {"name": "x", "degree": 3, "p": 1, "q": 1},
    ]}))
    with pytest.raises(ModelError) as info:
        load_model(str(invalid))
    assert info.value.problems


def _elliptic_document(elliptic_curve):
    return json.loads(json.dumps(elliptic_curve.to_dict()))


def test_model_file_product_missing_right(elliptic_curve):
    document = _elliptic_document(elliptic_curve)
    del document["products"][0]["right"]
    with pytest.raises(ModelError, match=r"products\[0\]: missing field right"):
        model_from_dict(document)


def test_model_file_non_integer_degree(elliptic_curve):
    document = _elliptic_document(elliptic_curve)
    document["classes"][1]["degree"] = "zero"
    with pytest.raises(ModelError, match=r"classes\[1\]\.degree: expected an integer"):
        model_from_dict(document)


def test_model_file_classes_must_be_a_list(elliptic_curve):
    document = _elliptic_document(elliptic_curve)
    document["classes"] = 3
    with pytest.raises(ModelError, match=r"model\.classes: expected a list"):
        model_from_dict(document)


def test_model_file_term_missing_coeff(elliptic_curve):
    document = _elliptic_document(elliptic_curve)
    del document["products"][0]["terms"][0]["coeff"]
    with pytest.raises(ModelError, match="missing field coeff"):
        model_from_dict(document)
