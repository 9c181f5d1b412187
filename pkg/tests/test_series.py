import numpy as np
import pytest

from src.catalog import elliptic
from src.errors import IdentityInputError
from src.series import (X, Y, HodgeSeries, e_polynomial, e_series, model_e_polynomial,
                        require_same_truncation, specialize_to_betti, specialize_to_e,
                        tensor_power_e_polynomial)
from src.spectral import UNORDERED, HodgeTable


def conf_line():
    """Conf^n(C) for n <= 2"""
    table = HodgeTable(UNORDERED, "Conf(C)")
    table.add(0, 0, 0, 0, 1)
    table.add(1, 0, 0, 0, 1)
    table.add(2, 0, 0, 0, 1)
    table.add(2, 1, 1, 1, 1)
    return table


def conf_punctured_line():
    """Conf^n(C*) for n <= 2"""
    table = HodgeTable(UNORDERED, "Conf(C*)")
    table.add(0, 0, 0, 0, 1)
    table.add(1, 0, 0, 0, 1)
    table.add(1, 1, 1, 1, 1)
    table.add(2, 0, 0, 0, 1)
    table.add(2, 1, 1, 1, 2)
    table.add(2, 2, 2, 2, 1)
    return table


def test_series_signs():
    series = HodgeSeries.from_table(conf_punctured_line())
    assert series.N == 2
    assert series.coefficients[2, 1, 1, 1] == -2
    assert series.hodge_number(2, 1, 1, 1) == 2
    assert series.hodge_number(5, 0, 0, 0) == 0
    assert specialize_to_betti(series)[2].tolist() == [1, -2, 1]


def test_e_polynomials():
    line = e_series(conf_line(), 1, 2)
    assert line[2].poly == X**2 * Y**2 - X * Y
    punctured = specialize_to_e(HodgeSeries.from_table(conf_punctured_line()), 1)
    assert punctured[2].poly == X**2 * Y**2 - 2 * X * Y + 1
    assert punctured[1] == e_polynomial(conf_punctured_line(), 1, 1)
    assert punctured[1].terms() == [(0, 0, -1), (1, 1, 1)]


def test_model_e_polynomials(once_punctured_elliptic):
    assert model_e_polynomial(once_punctured_elliptic).poly == X * Y - X - Y
    curve = model_e_polynomial(elliptic())
    assert curve.poly == (X - 1) * (Y - 1)
    assert tensor_power_e_polynomial(elliptic(), 2) == curve * curve


def test_geometric_factor_punctures_the_line():
    # Conf(C - P) = Conf(C) / (1 + xy u t): C* and Conf^2(C*)
    series = HodgeSeries.from_table(conf_line()).times_geometric(1)
    assert series.hodge_number(1, 0, 0, 0) == 1
    assert series.hodge_number(1, 1, 1, 1) == 1
    assert [series.hodge_number(2, i, i, i) for i in range(3)] == [1, 2, 1]
    assert int(np.abs(series.coefficients).sum()) == 7


def test_compact_support_by_duality():
    hc = HodgeSeries.from_table(conf_line()).compact_support(1)
    # h^0(C) of type (0,0) is h_c^2 of type (1,1)
    assert hc[1, 2, 1, 1] == 1
    # h^1(Conf^2 C) of type (1,1) is h_c^3 of type (1,1)
    assert hc[2, 3, 1, 1] == 1
    assert hc.sum() == 4


def test_truncation_checks():
    short = HodgeSeries.from_table(conf_line(), 1)
    long = HodgeSeries.from_table(conf_line(), 2)
    with pytest.raises(IdentityInputError):
        require_same_truncation(short, long)
    with pytest.raises(ValueError):
        HodgeSeries(np.zeros((2, 1, 1, 1)), 3)
    assert short != long
