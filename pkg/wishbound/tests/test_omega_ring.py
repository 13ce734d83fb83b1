"""Tests for ordered exponential integrals over the omega ring."""

import math
import itertools
from fractions import Fraction

import pytest

from wishbound.exact_ring import Limit
from wishbound.exceptions import DivergentIntegral
from wishbound.omega_ring import OmegaPoly, OrderedIntegralResult, gamma_invariant_holds, ordered_exp_integral


def test_single_variable():
    # int_0^inf theta^3 e^(-omega theta) = 6 omega^-4
    result = ordered_exp_integral([3])
    assert result.laurent == {-4: Fraction(6)}
    assert result.leading_exponent == 4


def test_two_variable_examples():
    assert ordered_exp_integral([1, 0]).laurent == {-3: Fraction(3, 4)}
    assert ordered_exp_integral([0, 1]).laurent == {-3: Fraction(1, 4)}
    assert ordered_exp_integral([0, 0]).laurent == {-2: Fraction(1, 2)}


def test_leading_coefficient_and_value():
    result = ordered_exp_integral([1, 0])
    assert result.leading_coeff == Fraction(3, 4)
    assert result.evaluate(2) == Fraction(3, 32)


def test_all_zero_exponents_give_simplex_volume():
    assert ordered_exp_integral([0, 0, 0]).laurent == {-3: Fraction(1, 6)}


@pytest.mark.parametrize("beta", [(2, 1, 0), (1, 1, 3), (0, 2, 2, 1)])
def test_orderings_sum_to_product_of_gammas(beta):
    # the ordered regions of every permutation tile the whole orthant
    total = OrderedIntegralResult({})
    for order in itertools.permutations(beta):
        total = total + ordered_exp_integral(order)
    expected_exponent = -(sum(beta) + len(beta))
    expected = Fraction(math.prod(math.factorial(b) for b in beta))
    assert total.laurent == {expected_exponent: expected}


@pytest.mark.parametrize("beta", [(1, 0), (0, 2, 1), (3, 0, 0, 2)])
def test_trace_keeps_gamma_invariant(beta):
    result = ordered_exp_integral(beta, trace=True)
    assert len(result.trace) == len(beta)
    for step, poly in enumerate(result.trace, start=1):
        assert gamma_invariant_holds(beta, step, poly)
    assert result == ordered_exp_integral(beta)


def test_result_is_homogeneous():
    result = ordered_exp_integral((2, 0, 1))
    assert result.laurent.keys() == {-6}


def test_invalid_exponents():
    with pytest.raises(ValueError):
        ordered_exp_integral([])
    with pytest.raises(ValueError):
        ordered_exp_integral([1, -1])


def test_omega_poly_integration_diverges_without_decay():
    poly = OmegaPoly.monomial((1,), 1, 2, omega_rate=0)
    with pytest.raises(DivergentIntegral):
        poly.integrate(1, Limit.zero(), Limit.infinity())


def test_omega_poly_integration():
    # int_0^inf theta e^(-2 omega theta) = 1/4 omega^-2
    poly = OmegaPoly.monomial((1,), 1, 1, omega_rate=2)
    assert poly.integrate(1, Limit.zero(), Limit.infinity()).laurent() == {-2: Fraction(1, 4)}
