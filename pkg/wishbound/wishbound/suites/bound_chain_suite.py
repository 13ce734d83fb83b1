"""
Bound-chain suite: for every 3x3 reference weight vector and gamma in
{1, 10, 100},

    exact_pep(alpha) <= exact_pep(alpha_min on p) <= bound value at omega = 1 + gamma alpha_min

as exact rational comparisons.
"""

import logging
from fractions import Fraction

from ..analysis_result import SuiteResult
from ..config import parse_alpha
from ..pep import bound_value, exact_pep, min_weight_alpha
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import marginal_bound, split_indices
from .reference_configs import THREE_BY_THREE, THREE_BY_THREE_CURVES

logger = logging.getLogger(__name__)

CHAIN_GAMMAS = (Fraction(1), Fraction(10), Fraction(100))


class BoundChainSuite(VerificationSuite):

    def get_name(self) -> str:
        return "bound-chain"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        dims = THREE_BY_THREE
        for alpha_text, _ in THREE_BY_THREE_CURVES:
            split = split_indices(parse_alpha(alpha_text))
            mb = marginal_bound(dims, split)
            middle_alpha = min_weight_alpha(split)
            for gamma in CHAIN_GAMMAS:
                exact = exact_pep(dims, split.alpha, gamma)
                middle = exact_pep(dims, middle_alpha, gamma)
                bound = bound_value(mb, gamma)
                result.record(
                    {'check': 'chain', 'n': dims.n, 'm': dims.m, 'alpha': alpha_text, 'gamma': str(gamma),
                     'exact': float(exact), 'middle': float(middle), 'bound': float(bound)},
                    exact <= middle <= bound,
                    f"alpha={alpha_text} gamma={gamma}: chain {float(exact)} <= {float(middle)} "
                    f"<= {float(bound)} fails",
                )
