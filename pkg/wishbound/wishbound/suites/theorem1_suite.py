"""
Smallest-degree suite for the marginal bounding polynomial.

For every N, M up to the sweep size and every nonempty p-subset this checks:
- the computed smallest degree of r equals (N - p1 + 1)(M - p1 + 1) - K
- the closed-form DegreeLedger gives the same number
- every term of g has degree K(X-Y) + K(K-1)
- every term of psi / g has degree (Y-K)(X-Y) + Y(Y-1) - K(K-1)
- psi itself is homogeneous of degree Y(X-Y) + Y(Y-1)
"""

import logging
from concurrent.futures import ThreadPoolExecutor

from tqdm import tqdm

from ..analysis_result import SuiteResult
from ..suite_runner import SuiteOptions, VerificationSuite
from ..wishart import build_psi, build_psi_quotient, marginal_bound
from .reference_configs import all_dimensions, format_indices, sweep_configurations

logger = logging.getLogger(__name__)


class Theorem1Suite(VerificationSuite):
    """Exhaustive smallest-degree sweep with ledger consistency."""

    def get_name(self) -> str:
        return "theorem1"

    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        for dims in all_dimensions(options.max_dim):
            expected = dims.y * (dims.x - dims.y) + dims.y * (dims.y - 1)
            degrees = set(build_psi(dims).degrees())
            result.record(
                {'check': 'psi_homogeneity', 'n': dims.n, 'm': dims.m,
                 'expected': expected, 'observed': format_indices(sorted(degrees))},
                degrees == {expected},
                f"psi for {dims} is not homogeneous of degree {expected}: {sorted(degrees)}",
            )

        configurations = list(sweep_configurations(options.max_dim))

        def bound_for(config):
            dims, split = config
            return dims, split, marginal_bound(dims, split)

        with ThreadPoolExecutor(max_workers=max(1, options.workers)) as pool:
            bounds = list(tqdm(pool.map(bound_for, configurations), total=len(configurations),
                               desc="theorem1", unit="split", disable=not options.progress))

        for dims, split, mb in bounds:
            ledger = mb.ledger
            base = {'n': dims.n, 'm': dims.m, 'p': format_indices(split.p), 'k': split.k}
            result.record(
                {**base, 'check': 'smallest_degree', 'observed': mb.smallest_degree,
                 'ledger': ledger.d_r_smallest, 'expected': mb.predicted_degree},
                mb.agrees(),
                f"{dims} p={base['p']}: smallest degree {mb.smallest_degree}, "
                f"ledger {ledger.d_r_smallest}, predicted {mb.predicted_degree}",
            )

            g_degrees = set(mb.g.degrees())
            quotient_degrees = set(build_psi_quotient(dims, split).degrees())
            ledger_ok = (g_degrees == {ledger.d_g_smallest}
                         and quotient_degrees == {ledger.d_h_org}
                         and smallest_degree_of_h(mb) == ledger.d_r_smallest - ledger.d_g_smallest)
            result.record(
                {**base, 'check': 'ledger', 'observed': format_indices(sorted(g_degrees | quotient_degrees)),
                 'ledger': f"{ledger.d_g_smallest},{ledger.d_h_org},{ledger.d_h_vanishing},{ledger.d_h_added}",
                 'expected': ledger.d_r_smallest},
                ledger_ok,
                f"{dims} p={base['p']}: ledger does not match g/h degrees "
                f"(g {sorted(g_degrees)}, psi/g {sorted(quotient_degrees)})",
            )
        logger.debug(f"Checked {len(bounds)} splits")


def smallest_degree_of_h(mb) -> int:
    return min(mb.h.degrees())
