"""
Ordered exponential integral suite.

Seeded random exponent vectors beta (K <= 4, beta_i <= 4) must integrate to a
single Laurent term zeta * omega^-(K + sum beta) with zeta > 0, and every
intermediate integrand must keep the omega/theta degree balance.
"""

import logging

import numpy as np

from ..analysis_result import SuiteResult
from ..omega_ring import gamma_invariant_holds, ordered_exp_integral
from ..suite_runner import SuiteOptions, VerificationSuite
from .reference_configs import format_indices

logger = logging.getLogger(__name__)

MAX_K = 4
MAX_BETA = 4


def random_betas(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        k = int(rng.integers(1, MAX_K + 1))
        yield tuple(int(b) for b in rng.integers(0, MAX_BETA + 1, size=k))


class Theorem2Suite(VerificationSuite):
    """Single-term Laurent result and step invariant for random beta."""

    def get_name(self) -> str:
        return "theorem2"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        for beta in random_betas(options.beta_count, options.seed):
            integral = ordered_exp_integral(beta, trace=True)
            expected = len(beta) + sum(beta)
            single = len(integral.laurent) == 1 and -expected in integral.laurent
            positive = single and integral.laurent[-expected] > 0
            result.record(
                {'check': 'single_term', 'beta': format_indices(beta), 'expected': expected,
                 'observed': format_indices(sorted(-w for w in integral.laurent)),
                 'zeta': str(integral.laurent.get(-expected, 0))},
                single and positive,
                f"beta={list(beta)}: expected one positive omega^-{expected} term, "
                f"got {sorted(integral.laurent.items())}",
            )
            for step, poly in enumerate(integral.trace, start=1):
                result.record(
                    {'check': 'step_invariant', 'beta': format_indices(beta), 'step': step},
                    gamma_invariant_holds(beta, step, poly),
                    f"beta={list(beta)}: degree balance broken after integration {step}",
                )
            if self.debug:
                logger.debug(f"beta={beta}: zeta={integral.laurent.get(-expected)}")
