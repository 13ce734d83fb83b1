"""Tests for exact and bounded pairwise-error-probability expectations."""

import logging
from fractions import Fraction

import pytest

from wishbound.exceptions import EnvelopeExceeded, InsufficientPoints
from wishbound.pep import (
    CSV_COLUMNS,
    CurveSource,
    bound_expectation,
    bound_value,
    db_to_gamma,
    diversity_exponent,
    exact_pep,
    fit_log_slope,
    format_alpha,
    min_weight_alpha,
    pep_curve,
    total_power_pep,
)
from wishbound.wishart import Dimensions, marginal_bound, split_indices


def test_single_antenna_is_exponential():
    assert exact_pep(Dimensions(1, 1), [1], 3) == Fraction(1, 4)


@pytest.mark.parametrize("n,m,gamma", [(2, 2, 1), (3, 2, 2), (3, 3, Fraction(1, 2))])
def test_equal_weights_match_total_power(n, m, gamma):
    dims = Dimensions(n, m)
    value = exact_pep(dims, [1] * dims.y, gamma)
    assert value == total_power_pep(dims, gamma)
    assert value == Fraction(1) / (1 + Fraction(gamma)) ** (n * m)


def test_smallest_eigenvalue_of_two_by_two():
    # mu_2 has density 2 exp(-2 mu)
    assert exact_pep(Dimensions(2, 2), [0, 1], 2) == Fraction(1, 2)


def test_zero_snr_gives_one():
    assert exact_pep(Dimensions(3, 3), [0, 1, 0], 0) == 1


def test_exact_pep_decreases_with_snr():
    dims = Dimensions(3, 3)
    values = [exact_pep(dims, [Fraction(1, 10), 0, 1], g) for g in (0, 1, 10, 100)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(0 < v <= 1 for v in values)


def test_exact_pep_rejects_bad_input():
    with pytest.raises(EnvelopeExceeded):
        exact_pep(Dimensions(5, 5), [1, 0, 0, 0, 0], 1)
    with pytest.raises(ValueError):
        exact_pep(Dimensions(2, 2), [1, 0], -1)


def test_bound_expectation_examples():
    dims = Dimensions(2, 2)
    second = bound_expectation(marginal_bound(dims, split_indices([0, 1])))
    assert second.laurent == {-3: Fraction(2), -2: Fraction(-2), -1: Fraction(2)}
    assert second.leading_exponent == 1
    first = bound_expectation(marginal_bound(dims, split_indices([1, 0])))
    assert first.laurent == {-4: Fraction(2)}


def test_bound_dominates_exact():
    dims = Dimensions(2, 2)
    mb = marginal_bound(dims, split_indices([0, 1]))
    for gamma in (1, 10, 1000):
        assert bound_value(mb, gamma) >= exact_pep(dims, [0, 1], gamma)


def test_bound_chain():
    dims = Dimensions(3, 3)
    alpha = [Fraction(1, 10), 0, 1]
    split = split_indices(alpha)
    mb = marginal_bound(dims, split)
    gamma = 10
    assert exact_pep(dims, alpha, gamma) <= exact_pep(dims, min_weight_alpha(split), gamma)
    assert exact_pep(dims, min_weight_alpha(split), gamma) <= bound_value(mb, gamma)


def test_min_weight_alpha():
    split = split_indices([Fraction(1, 10), 0, 1])
    assert min_weight_alpha(split) == (Fraction(1, 10), 0, Fraction(1, 10))


@pytest.mark.parametrize("n,m,alpha,expected", [
    (3, 3, [1, 0, 0], 9),
    (3, 3, [0, 1, 0], 4),
    (3, 3, [0, 0, 1], 1),
    (4, 4, [0, 0, 1, 100], 4),
    (2, 4, [0, 1], 3),
])
def test_diversity_exponent(n, m, alpha, expected):
    assert diversity_exponent(Dimensions(n, m), alpha) == expected


def test_db_to_gamma():
    assert db_to_gamma(0) == 1
    assert db_to_gamma(10) == 10
    assert db_to_gamma(20) == 100
    assert db_to_gamma(3) == Fraction("1.99526231497")


def test_format_alpha():
    assert format_alpha([Fraction(1, 10), 0, 1]) == "1/10;0;1"


def test_fit_recovers_power_law():
    gammas = [Fraction(10) ** k for k in range(1, 5)]
    values = [g ** -4 for g in gammas]
    assert fit_log_slope(gammas, values) == pytest.approx(-4.0, abs=1e-9)


def test_fit_ignores_scale():
    gammas = [Fraction(10) ** k for k in (3, 4, 5)]
    values = [Fraction(7, 3) * g ** -9 for g in gammas]
    assert fit_log_slope(gammas, values) == pytest.approx(-9.0, abs=1e-9)


def test_single_antenna_curve_slope():
    curve = pep_curve(Dimensions(1, 1), [1], [30, 35, 40])
    assert curve.fitted_slope == pytest.approx(-1.0, abs=0.01)


def test_fit_needs_positive_points():
    with pytest.raises(InsufficientPoints):
        fit_log_slope([1, 10], [0.5, 0.1])
    with pytest.raises(InsufficientPoints):
        fit_log_slope([1, 10, 100], [0.5, 0.0, 0.1])


class TestPepCurve:
    """Exact and bound curves over a dB grid."""

    grid = [0, 10, 20, 30, 40]

    def test_exact_curve_slope(self):
        curve = pep_curve(Dimensions(2, 2), [0, 1], self.grid, CurveSource.EXACT)
        assert curve.values[0] == Fraction(2, 3)
        assert curve.predicted_exponent == 1
        assert curve.fitted_slope == pytest.approx(-1.0, abs=0.02)

    def test_bound_curve_dominates_exact_curve(self):
        dims = Dimensions(2, 2)
        exact = pep_curve(dims, [0, 1], self.grid, CurveSource.EXACT)
        bound = pep_curve(dims, [0, 1], self.grid, CurveSource.BOUND)
        assert all(b >= e for b, e in zip(bound.values, exact.values))

    def test_workers_do_not_change_values(self):
        dims = Dimensions(3, 2)
        serial = pep_curve(dims, [0, 1], self.grid)
        threaded = pep_curve(dims, [0, 1], self.grid, workers=3)
        assert serial.values == threaded.values

    def test_short_grid_has_no_slope(self):
        curve = pep_curve(Dimensions(2, 2), [1, 0], [0, 10])
        assert curve.fitted_slope is None

    def test_dataframe_schema(self):
        curve = pep_curve(Dimensions(2, 2), [0, 1], self.grid)
        df = curve.to_dataframe(exact_column=True)
        assert list(df.columns) == CSV_COLUMNS + ['exact']
        assert df['exact'].iloc[0] == "2/3"
        assert df['alpha'].iloc[0] == "0;1"
        assert df['source'].unique().tolist() == ['exact']

    def test_debug_log_names_curve(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="wishbound"):
            pep_curve(Dimensions(1, 1), [1], [0, 10])
        assert "Built exact curve for" in caplog.text
        assert "alpha=1 over 2 points" in caplog.text

    def test_rejects_bad_grid_and_source(self):
        with pytest.raises(ValueError):
            pep_curve(Dimensions(2, 2), [0, 1], [10, 0])
        with pytest.raises(ValueError):
            pep_curve(Dimensions(2, 2), [0, 1], self.grid, CurveSource.MONTE_CARLO)
