"""
Leading-exponent suite: the bound's Laurent polynomial in omega decays like
omega^-((N - p1 + 1)(M - p1 + 1)) for every sweep configuration.
"""

import logging

from ..analysis_result import SuiteResult
from ..pep import bound_expectation, diversity_exponent
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import marginal_bound
from .reference_configs import format_indices, sweep_configurations

logger = logging.getLogger(__name__)


class DiversitySuite(VerificationSuite):

    def get_name(self) -> str:
        return "diversity"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        for dims, split in sweep_configurations(options.max_dim):
            mb = marginal_bound(dims, split)
            expectation = bound_expectation(mb)
            expected = diversity_exponent(dims, split.alpha)
            observed = expectation.leading_exponent
            ok = (observed == expected == split.k + mb.smallest_degree
                  and expectation.leading_coeff > 0)
            result.record(
                {'check': 'leading_exponent', 'n': dims.n, 'm': dims.m, 'p': format_indices(split.p),
                 'observed': observed, 'expected': expected, 'eta': str(expectation.leading_coeff)},
                ok,
                f"{dims} p={format_indices(split.p)}: leading exponent {observed}, expected {expected}",
            )
