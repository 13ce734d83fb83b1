"""Tests for the symbolic verification suites."""

import pytest

from wishbound.suite_runner import SuiteOptions
from wishbound.suites import (
    BoundChainSuite,
    DiversitySuite,
    NormalizationSuite,
    Theorem1Suite,
    Theorem2Suite,
)
from wishbound.suites.theorem2_suite import random_betas

SMALL = SuiteOptions(seed=3, samples=1000, points=50, beta_count=20, max_dim=3)


def test_theorem1_suite():
    suite = Theorem1Suite()
    result = suite.run(SMALL)
    assert result.is_valid(), result.errors
    # 9 homogeneity rows, then 2 rows for each of the 21 splits with N, M <= 3
    assert result.checks == 9 + 2 * 21
    df = suite.get_results_dataframe()
    assert set(df['check']) == {'psi_homogeneity', 'smallest_degree', 'ledger'}


def test_theorem2_suite():
    result = Theorem2Suite().run(SMALL)
    assert result.is_valid(), result.errors
    singles = [row for row in result.rows if row['check'] == 'single_term']
    assert len(singles) == SMALL.beta_count


def test_random_betas_are_seeded():
    assert list(random_betas(10, 5)) == list(random_betas(10, 5))
    assert all(1 <= len(beta) <= 4 and max(beta) <= 4 for beta in random_betas(50, 1))


def test_normalization_suite():
    result = NormalizationSuite().run(SMALL)
    assert result.is_valid(), result.errors
    assert result.checks == 2 * 9


def test_diversity_suite():
    result = DiversitySuite().run(SMALL)
    assert result.is_valid(), result.errors
    assert all(row['observed'] == row['expected'] for row in result.rows)


def test_bound_chain_suite():
    result = BoundChainSuite().run(SMALL)
    assert result.is_valid(), result.errors
    assert result.checks == 5 * 3


@pytest.mark.parametrize("suite_class", [Theorem1Suite, DiversitySuite])
def test_threaded_runs_agree(suite_class):
    options = SuiteOptions(max_dim=2, workers=3)
    assert suite_class().run(options).rows == suite_class().run(SuiteOptions(max_dim=2)).rows
