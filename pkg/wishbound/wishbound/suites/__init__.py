"""
Verification suites for wishbound.
"""

from .theorem1_suite import Theorem1Suite
from .theorem2_suite import Theorem2Suite
from .normalization_suite import NormalizationSuite
from .dominance_suite import DominanceSuite
from .mc_cross_suite import McCrossSuite
from .diversity_suite import DiversitySuite
from .asymptote_suite import AsymptoteSuite
from .bound_chain_suite import BoundChainSuite

ALL_SUITES = [
    Theorem1Suite,
    Theorem2Suite,
    NormalizationSuite,
    DominanceSuite,
    McCrossSuite,
    DiversitySuite,
    AsymptoteSuite,
    BoundChainSuite,
]

__all__ = [
    'Theorem1Suite',
    'Theorem2Suite',
    'NormalizationSuite',
    'DominanceSuite',
    'McCrossSuite',
    'DiversitySuite',
    'AsymptoteSuite',
    'BoundChainSuite',
    'ALL_SUITES',
]
