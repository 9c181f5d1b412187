from fractions import Fraction

import pytest

from src.catalog import catalog, catalog_entries, parse_catalog_spec
from src.errors import ModelError


def test_parse_catalog_spec_forms():
    assert parse_catalog_spec("curve_open:1,2").name == "curve_open:1,2"
    assert parse_catalog_spec("affine_space(2)").dim_c == 2
    assert parse_catalog_spec("elliptic").compact
    # missing arguments fall back to defaults
    assert parse_catalog_spec("torus").name == "torus:1"


@pytest.mark.parametrize("spec", ["nowhere", "affine_space:0", "affine_space:1,2", "elliptic:3", "curve_open:0,0"])
def test_bad_catalog_specs(spec):
    with pytest.raises(ModelError):
        parse_catalog_spec(spec)


def test_slopes():
    assert catalog("affine_space").slope == 1
    assert catalog("torus", 2).slope == 2
    assert catalog("p2_minus_curve").slope == Fraction(3, 2)
    assert catalog("curve_open", 0, 2).slope is None
    assert catalog("conf2_elliptic_open").slope is None


def test_curve_open_classes():
    model = catalog("curve_open", 0, 3)
    assert model.poincare_polynomial() == [1, 2]
    assert all(cls.hodge.p == cls.hodge.q == 1 for cls in model.classes if cls.degree == 1)


def test_catalog_entries_listing():
    entries = {entry["entry"]: entry for entry in catalog_entries()}
    assert "affine_space" in entries
    assert entries["elliptic"]["slope"] == "1"
    assert entries["elliptic"]["compact"] is True
    assert entries["p2_minus_curve"]["slope"] == "3/2"
    assert entries["proj_line"]["betti"] == [1, 0, 1]
    assert [entry["entry"] for entry in catalog_entries()] == sorted(entries)
