"""
Monte-Carlo cross-validation suite.

Sampled PEP estimates must sit within 4 standard errors of the exact values
on a low-SNR grid, and the sampled histogram of one ordered eigenvalue must
stay under its bound density.
"""

import logging

from ..analysis_result import SuiteResult
from ..config import parse_grid
from ..monte_carlo import estimate_pep_curve, histogram_dominance, marginal_histogram
from ..pep import db_to_gamma, exact_pep, format_alpha
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import Dimensions, exact_marginal, marginal_bound, split_from_indices
from .reference_configs import THREE_BY_THREE

logger = logging.getLogger(__name__)

MC_GRID = "0:12:3"
MC_ALPHAS = ((0, 1, 0), (1, 0, 0))
SIGMAS = 4.0
HISTOGRAM_DIMS = Dimensions(2, 2)
HISTOGRAM_INDEX = 2
HISTOGRAM_BINS = 40
HISTOGRAM_MIN_SAMPLES = 100_000


class McCrossSuite(VerificationSuite):

    def get_name(self) -> str:
        return "mc-cross"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        gammas = [db_to_gamma(db) for db in parse_grid(options.mc_grid or MC_GRID)]
        for alpha in MC_ALPHAS:
            estimates = estimate_pep_curve(THREE_BY_THREE, alpha, gammas, options.samples,
                                           options.seed, options.workers, options.progress)
            for gamma, estimate in zip(gammas, estimates):
                exact = float(exact_pep(THREE_BY_THREE, alpha, gamma))
                ok = abs(estimate.mean - exact) <= SIGMAS * estimate.stderr
                result.record(
                    {'check': 'pep', 'n': 3, 'm': 3, 'alpha': format_alpha(alpha), 'gamma': str(gamma),
                     'mean': estimate.mean, 'stderr': estimate.stderr, 'exact': exact},
                    ok,
                    f"MC mean {estimate.mean} vs exact {exact} (stderr {estimate.stderr}) "
                    f"for alpha={format_alpha(alpha)} gamma={gamma}",
                )

        if options.samples < HISTOGRAM_MIN_SAMPLES:
            logger.info(f"Skipping histogram check: {options.samples} samples < {HISTOGRAM_MIN_SAMPLES}")
            return
        hist = marginal_histogram(HISTOGRAM_DIMS, HISTOGRAM_INDEX, HISTOGRAM_BINS,
                                  options.samples, options.seed, options.workers)
        bound = marginal_bound(HISTOGRAM_DIMS, split_from_indices([HISTOGRAM_INDEX], HISTOGRAM_DIMS.y))
        violations = histogram_dominance(hist, bound.density(normalized=True),
                                         reference=exact_marginal(HISTOGRAM_DIMS, [HISTOGRAM_INDEX]))
        result.record(
            {'check': 'histogram', 'n': HISTOGRAM_DIMS.n, 'm': HISTOGRAM_DIMS.m, 'p': str(HISTOGRAM_INDEX),
             'violations': len(violations), 'integral': hist.integral()},
            not violations and abs(hist.integral() - 1.0) <= 1e-3,
            f"{len(violations)} histogram bins exceed the bound density for mu_{HISTOGRAM_INDEX}",
        )
