"""
Dominance suite.

Checks at seeded random ordered points that
- the joint pdf never exceeds the bounding function rho_hat, for every split
- the exact single-eigenvalue marginal never exceeds the normalized bound
  density r(mu) exp(-mu) / C
"""

import logging

import numpy as np

from ..analysis_result import SuiteResult
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import (
    Dimensions,
    exact_marginal,
    marginal_bound,
    random_ordered_point,
    rho_hat_dominates,
    split_from_indices,
)
from .reference_configs import format_indices, sweep_configurations

logger = logging.getLogger(__name__)

DOMINANCE_DIMENSIONS = (Dimensions(2, 2), Dimensions(3, 2), Dimensions(3, 3))
ABSOLUTE_SLACK = 1e-12


class DominanceSuite(VerificationSuite):

    def get_name(self) -> str:
        return "dominance"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        rng = np.random.default_rng(options.seed)
        wanted = set(DOMINANCE_DIMENSIONS)

        for dims, split in sweep_configurations(max(d.x for d in wanted)):
            if dims not in wanted:
                continue
            failures = 0
            for _ in range(options.points):
                point = random_ordered_point(rng, dims.y, 4.0 * dims.x)
                if not rho_hat_dominates(dims, split, point):
                    failures += 1
            result.record(
                {'check': 'rho_hat', 'n': dims.n, 'm': dims.m, 'p': format_indices(split.p),
                 'points': options.points, 'violations': failures},
                failures == 0,
                f"rho > rho_hat at {failures} points for {dims} p={format_indices(split.p)}",
            )

        for dims in DOMINANCE_DIMENSIONS:
            for index in dims.variables:
                exact = exact_marginal(dims, [index])
                bound = marginal_bound(dims, split_from_indices([index], dims.y)).density(normalized=True)
                worst = -np.inf
                failures = 0
                for _ in range(options.points):
                    (mu,) = random_ordered_point(rng, 1, 4.0 * dims.x)
                    excess = exact.evaluate_float([mu]) - bound.evaluate_float([mu])
                    worst = max(worst, excess)
                    if excess > ABSOLUTE_SLACK:
                        failures += 1
                result.record(
                    {'check': 'marginal', 'n': dims.n, 'm': dims.m, 'p': str(index),
                     'points': options.points, 'violations': failures, 'max_excess': float(worst)},
                    failures == 0,
                    f"Exact marginal of mu_{index} exceeds its bound at {failures} points for {dims}",
                )
