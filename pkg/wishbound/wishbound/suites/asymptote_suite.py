"""
Asymptote suite: exact PEP curves over 0..40 dB must end with a fitted slope
within 2% of minus the diversity exponent.
"""

import logging

from ..analysis_result import SuiteResult
from ..config import parse_alpha, parse_grid
from ..pep import CurveSource, pep_curve
from ..suite_runner import SuiteOptions, VerificationSuite
from .reference_configs import (
    ASYMPTOTE_GRID,
    FOUR_BY_FOUR,
    FOUR_BY_FOUR_CURVES,
    SLOPE_TOLERANCE,
    THREE_BY_THREE,
    THREE_BY_THREE_CURVES,
)

logger = logging.getLogger(__name__)


class AsymptoteSuite(VerificationSuite):

    def get_name(self) -> str:
        return "asymptote"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        grid = parse_grid(ASYMPTOTE_GRID)
        families = [(THREE_BY_THREE, THREE_BY_THREE_CURVES)]
        if options.max_dim >= FOUR_BY_FOUR.y:
            families.append((FOUR_BY_FOUR, FOUR_BY_FOUR_CURVES))
        for dims, curves in families:
            for alpha_text, exponent in curves:
                curve = pep_curve(dims, parse_alpha(alpha_text), grid, CurveSource.EXACT,
                                  workers=options.workers, progress=options.progress)
                slope = curve.fitted_slope
                decreasing = all(a > b for a, b in zip(curve.values, curve.values[1:]))
                ok = (curve.predicted_exponent == exponent and slope is not None
                      and abs(slope + exponent) <= SLOPE_TOLERANCE * exponent and decreasing)
                result.record(
                    {'check': 'slope', 'n': dims.n, 'm': dims.m, 'alpha': alpha_text,
                     'observed': slope, 'expected': -exponent, 'decreasing': decreasing},
                    ok,
                    f"{dims} alpha={alpha_text}: slope {slope} vs -{exponent}",
                )
