"""
wishbound - Exact marginal-pdf bounds for ordered Wishart eigenvalues and the
diversity order they imply for weighted pairwise error probabilities.
"""

from .exact_ring import ExpPoly, Limit, format_poly, parse_poly
from .wishart import (
    Dimensions,
    IndexSplit,
    MarginalBound,
    build_joint_pdf,
    degree_ledger,
    exact_marginal,
    marginal_bound,
    split_indices,
)
from .pep import (
    CurveSource,
    PepCurve,
    bound_expectation,
    diversity_exponent,
    exact_pep,
    pep_curve,
    slope_fit,
)
from .omega_ring import ordered_exp_integral
from .monte_carlo import estimate_pep, marginal_histogram

__version__ = '0.1.0'
__all__ = [
    'ExpPoly',
    'Limit',
    'format_poly',
    'parse_poly',
    'Dimensions',
    'IndexSplit',
    'MarginalBound',
    'build_joint_pdf',
    'degree_ledger',
    'exact_marginal',
    'marginal_bound',
    'split_indices',
    'CurveSource',
    'PepCurve',
    'bound_expectation',
    'diversity_exponent',
    'exact_pep',
    'pep_curve',
    'slope_fit',
    'ordered_exp_integral',
    'estimate_pep',
    'marginal_histogram',
]
