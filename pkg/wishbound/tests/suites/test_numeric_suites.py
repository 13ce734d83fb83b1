"""Tests for the sampled and curve-based verification suites."""

from wishbound.pep import db_to_gamma
from wishbound.suite_runner import SuiteOptions
from wishbound.suites import AsymptoteSuite, DominanceSuite, McCrossSuite


def test_dominance_suite():
    result = DominanceSuite().run(SuiteOptions(seed=2, points=50))
    assert result.is_valid(), result.errors
    assert all(row['violations'] == 0 for row in result.rows)


def test_mc_cross_suite_without_histogram():
    # 50000 samples cannot resolve the order-9 curve past 6 dB
    result = McCrossSuite().run(SuiteOptions(seed=1, samples=50_000, workers=2, mc_grid="0:6:3"))
    assert result.is_valid(), result.errors
    # two weight vectors over three SNR points; histogram skipped below 100000 samples
    assert result.checks == 6
    assert {row['check'] for row in result.rows} == {'pep'}


def test_mc_cross_suite_default_grid():
    result = McCrossSuite().run(SuiteOptions(seed=1, samples=2000))
    assert result.checks == 10
    gammas = {row['gamma'] for row in result.rows}
    assert gammas == {str(db_to_gamma(db)) for db in (0, 3, 6, 9, 12)}


def test_asymptote_suite_three_by_three():
    result = AsymptoteSuite().run(SuiteOptions(max_dim=3))
    assert result.is_valid(), result.errors
    assert result.checks == 5
    for row in result.rows:
        assert abs(row['observed'] - row['expected']) <= 0.02 * abs(row['expected'])
