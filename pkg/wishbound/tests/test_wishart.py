"""Tests for the symbolic Wishart densities and marginal bounds."""

import itertools
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np

from wishbound.exact_ring import ExpPoly, Limit, parse_poly
from wishbound.exceptions import AllZeroAlpha, EnvelopeExceeded, InvalidAlpha, VariableMismatch
from wishbound.wishart import (
    Dimensions,
    SplitCase,
    build_g,
    build_joint_pdf,
    build_psi,
    build_psi_quotient,
    check_envelope,
    check_split,
    closed_form_normalization,
    degree_ledger,
    exact_marginal,
    integrate_ordered_simplex,
    marginal_bound,
    normalization_constant,
    random_ordered_point,
    rho_hat_dominates,
    split_from_indices,
    split_indices,
    theorem_degree,
)

TEST_FILES_DIR = Path(__file__).parent / "test_files"


def all_splits(y):
    for size in range(1, y + 1):
        for p in itertools.combinations(range(1, y + 1), size):
            yield split_from_indices(p, y)


class TestDimensions(unittest.TestCase):
    """Dimension and weight-vector value types."""

    def test_derived_sizes(self):
        dims = Dimensions(2, 4)
        self.assertEqual((dims.x, dims.y), (4, 2))
        self.assertEqual(dims.variables, (1, 2))
        self.assertEqual(str(dims), "2x4")

    def test_rejects_non_positive(self):
        with self.assertRaises(ValueError):
            Dimensions(0, 2)
        with self.assertRaises(ValueError):
            Dimensions(2, -1)

    def test_envelope(self):
        check_envelope(Dimensions(4, 6))
        with self.assertRaises(EnvelopeExceeded):
            check_envelope(Dimensions(5, 5))

    def test_split_alpha_one_zero(self):
        split = split_indices([0, 1, 0])
        self.assertEqual(split.p, (2,))
        self.assertEqual(split.s, (1, 3))
        self.assertEqual(split.case, SplitCase.ALPHA_ONE_ZERO)
        self.assertEqual(split.epsilon, 1)
        self.assertEqual(split.k, 1)
        self.assertEqual(split.p1, 2)

    def test_split_alpha_one_positive(self):
        split = split_indices([0.1, 0, 1])
        self.assertEqual(split.p, (1, 3))
        self.assertEqual(split.s, (2,))
        self.assertEqual(split.case, SplitCase.ALPHA_ONE_POSITIVE)
        self.assertEqual(split.epsilon, 0)
        self.assertEqual(split.alpha_min, Fraction(1, 10))

    def test_split_counts_leading_zeros(self):
        self.assertEqual(split_indices([0, 0, 1]).epsilon, 2)

    def test_split_rejects_bad_alpha(self):
        with self.assertRaises(AllZeroAlpha):
            split_indices([0, 0])
        with self.assertRaises(InvalidAlpha):
            split_indices([-1, 1])
        with self.assertRaises(InvalidAlpha):
            split_indices([])
        with self.assertRaises(InvalidAlpha):
            check_split(Dimensions(3, 3), split_indices([1, 0]))

    def test_split_from_indices(self):
        self.assertEqual(split_from_indices((1, 3), 3).alpha, (1, 0, 1))
        with self.assertRaises(InvalidAlpha):
            split_from_indices((3, 1), 3)


class TestJointDensity(unittest.TestCase):
    """The ordered eigenvalue joint pdf and its normalization."""

    def test_psi_two_by_two(self):
        v = (1, 2)
        mu1, mu2 = ExpPoly.variable(v, 1), ExpPoly.variable(v, 2)
        self.assertEqual(build_psi(Dimensions(2, 2)), mu1 * mu1 - 2 * mu1 * mu2 + mu2 * mu2)

    def test_psi_rectangular(self):
        v = (1, 2)
        mu1, mu2 = ExpPoly.variable(v, 1), ExpPoly.variable(v, 2)
        self.assertEqual(build_psi(Dimensions(3, 2)), mu1 * mu2 * (mu1 - mu2) ** 2)

    def test_psi_is_homogeneous(self):
        dims = Dimensions(4, 3)
        degrees = set(build_psi(dims).degrees())
        self.assertEqual(degrees, {dims.y * (dims.x - dims.y) + dims.y * (dims.y - 1)})

    def test_normalization_values(self):
        expected = {(1, 1): 1, (2, 1): 1, (2, 2): 1, (3, 2): 2, (3, 3): 4}
        for (n, m), value in expected.items():
            with self.subTest(n=n, m=m):
                self.assertEqual(normalization_constant(Dimensions(n, m)), value)

    def test_normalization_closed_form(self):
        for n, m in [(2, 3), (4, 2), (4, 3), (4, 4)]:
            with self.subTest(n=n, m=m):
                dims = Dimensions(n, m)
                self.assertEqual(normalization_constant(dims), closed_form_normalization(dims))

    def test_normalized_pdf_has_unit_mass(self):
        for dims in (Dimensions(2, 3), Dimensions(3, 3)):
            with self.subTest(dims=str(dims)):
                self.assertEqual(integrate_ordered_simplex(build_joint_pdf(dims), dims), 1)

    def test_simplex_integration_needs_all_variables(self):
        with self.assertRaises(VariableMismatch):
            integrate_ordered_simplex(ExpPoly.constant((1,), 1), Dimensions(2, 2))

    def test_g_times_quotient_is_psi(self):
        for dims in (Dimensions(3, 2), Dimensions(3, 3)):
            for split in all_splits(dims.y):
                with self.subTest(dims=str(dims), p=split.p):
                    g = build_g(dims, split).embed(dims.variables)
                    self.assertEqual(g * build_psi_quotient(dims, split), build_psi(dims))

    def test_rho_hat_dominates_rho(self):
        rng = np.random.default_rng(7)
        dims = Dimensions(3, 3)
        for split in all_splits(dims.y):
            for _ in range(20):
                point = random_ordered_point(rng, dims.y, 8.0)
                self.assertTrue(rho_hat_dominates(dims, split, point))


class TestMarginalBound(unittest.TestCase):
    """Bounding polynomials, their smallest degree and the degree ledger."""

    def test_two_by_two_second_eigenvalue(self):
        mb = marginal_bound(Dimensions(2, 2), split_indices([0, 1]))
        self.assertEqual(mb.r, parse_poly("2/1\n-2/1 * mu_2\n1/1 * mu_2^2\n", varnames=(2,)))
        self.assertEqual(mb.smallest_degree, 0)
        self.assertTrue(mb.agrees())

    def test_two_by_two_first_eigenvalue(self):
        mb = marginal_bound(Dimensions(2, 2), split_indices([1, 0]))
        self.assertEqual(mb.r, ExpPoly.monomial((1,), {1: 3}, Fraction(1, 3)))
        self.assertEqual(mb.smallest_degree, 3)

    def test_three_by_three_golden(self):
        mb = marginal_bound(Dimensions(3, 3), split_indices([0, 1, 0]))
        self.assertEqual(mb.r, parse_poly((TEST_FILES_DIR / "r_3x3_p2.txt").read_text()))
        self.assertEqual(mb.smallest_degree, 3)
        self.assertEqual(mb.predicted_degree, 3)

    def test_ledger_examples(self):
        ledger = degree_ledger(Dimensions(2, 2), split_indices([1, 0]))
        self.assertEqual((ledger.d_g_smallest, ledger.d_h_org, ledger.d_h_vanishing, ledger.d_h_added),
                         (0, 2, 0, 1))
        ledger = degree_ledger(Dimensions(2, 2), split_indices([0, 1]))
        self.assertEqual((ledger.d_g_smallest, ledger.d_h_org, ledger.d_h_vanishing, ledger.d_h_added),
                         (0, 2, 2, 0))
        self.assertEqual(ledger.d_r_smallest, 0)

    def test_degree_agrees_for_every_split(self):
        for n, m in [(2, 3), (3, 3), (4, 3)]:
            dims = Dimensions(n, m)
            for split in all_splits(dims.y):
                with self.subTest(dims=str(dims), p=split.p):
                    mb = marginal_bound(dims, split)
                    self.assertEqual(mb.smallest_degree, theorem_degree(dims, split))
                    self.assertEqual(mb.ledger.d_r_smallest, mb.smallest_degree)

    def test_bound_density_dominates_exact_marginal(self):
        dims = Dimensions(2, 2)
        mb = marginal_bound(dims, split_indices([0, 1]))
        exact = exact_marginal(dims, (2,))
        for x in (0.5, 1.0, 3.0):
            self.assertGreaterEqual(mb.density().evaluate_float([x]), exact.evaluate_float([x]))


class TestExactMarginal(unittest.TestCase):
    """Brute-force marginal pdfs."""

    def test_smallest_eigenvalue_of_two_by_two(self):
        self.assertEqual(exact_marginal(Dimensions(2, 2), (2,)),
                         ExpPoly.monomial((2,), {}, 2, {2: 2}))

    def test_full_index_set_is_joint_pdf(self):
        dims = Dimensions(3, 2)
        self.assertEqual(exact_marginal(dims, (1, 2)), build_joint_pdf(dims))

    def test_marginals_have_unit_mass(self):
        dims = Dimensions(3, 3)
        for index in dims.variables:
            with self.subTest(index=index):
                marginal = exact_marginal(dims, (index,))
                mass = marginal.integrate(index, Limit.zero(), Limit.infinity()).constant_value()
                self.assertEqual(mass, 1)


if __name__ == '__main__':
    unittest.main()
