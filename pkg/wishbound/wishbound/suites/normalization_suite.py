"""
Normalization suite: the normalized joint pdf integrates to exactly 1 and the
engine's constant matches prod (X-i)! (Y-i)!.
"""

import logging

from ..analysis_result import SuiteResult
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import (
    build_joint_pdf,
    closed_form_normalization,
    integrate_ordered_simplex,
    normalization_constant,
)
from .reference_configs import all_dimensions

logger = logging.getLogger(__name__)


class NormalizationSuite(VerificationSuite):

    def get_name(self) -> str:
        return "normalization"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        for dims in all_dimensions(options.max_dim):
            total = integrate_ordered_simplex(build_joint_pdf(dims, normalized=True), dims)
            result.record(
                {'check': 'unit_mass', 'n': dims.n, 'm': dims.m, 'observed': str(total), 'expected': '1'},
                total == 1,
                f"Normalized pdf for {dims} integrates to {total}",
            )
            constant = normalization_constant(dims)
            closed = closed_form_normalization(dims)
            result.record(
                {'check': 'closed_form', 'n': dims.n, 'm': dims.m,
                 'observed': str(constant), 'expected': str(closed)},
                constant == closed,
                f"Normalization constant for {dims} is {constant}, closed form gives {closed}",
            )
