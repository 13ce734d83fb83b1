"""
Pairwise-error-probability expectations, exact and bounded.

This module provides:
- exact_pep: E[exp(-gamma sum alpha_j mu_j)] as an exact rational
- bound_expectation / bound_value: the Laurent-polynomial upper bound obtained
  from the marginal bound r(mu_p) and ordered exponential integrals
- diversity_exponent: the high-SNR slope (N - p1 + 1)(M - p1 + 1)
- PepCurve / pep_curve / slope_fit: curves over a dB grid and their fitted
  log-log slope
"""

import math
import logging
from enum import Enum
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from .exact_ring import ExpPoly, RationalLike, to_rational
from .exceptions import InsufficientPoints
from .omega_ring import OrderedIntegralResult, ordered_exp_integral
from .wishart import (
    Dimensions,
    IndexSplit,
    MarginalBound,
    build_psi,
    check_envelope,
    check_split,
    integrate_ordered_simplex,
    marginal_bound,
    normalization_constant,
    split_indices,
)

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3

CSV_COLUMNS = ['gamma_db', 'value', 'stderr', 'source', 'n', 'm', 'alpha', 'predicted_exponent']


class CurveSource(Enum):
    EXACT = "exact"
    BOUND = "bound"
    MONTE_CARLO = "mc"


def db_to_gamma(db: float) -> Fraction:
    """10^(db/10) rounded to 12 significant decimal digits, as an exact rational."""
    return Fraction(f"{10 ** (float(db) / 10):.12g}")


def format_alpha(alpha: Sequence[RationalLike]) -> str:
    """Exact ';'-separated rendering of a weight vector."""
    return ";".join(str(to_rational(a)) for a in alpha)


def _prepare(dims: Dimensions, alpha: Sequence[RationalLike]) -> IndexSplit:
    split = split_indices(alpha)
    check_split(dims, split)
    return split


def exact_pep(dims: Dimensions, alpha: Sequence[RationalLike], gamma: RationalLike) -> Fraction:
    """
    Exact E[exp(-gamma sum alpha_j mu_j)] over the ordered eigenvalue law.

    Args:
        dims: Antenna counts (min(N, M) <= 4)
        alpha: Nonnegative weights, not all zero
        gamma: Nonnegative SNR as a rational

    Returns:
        Rational in (0, 1]
    """
    check_envelope(dims)
    split = _prepare(dims, alpha)
    gamma = to_rational(gamma)
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    rates = {j: 1 + gamma * a for j, a in zip(dims.variables, split.alpha)}
    integrand = build_psi(dims) * ExpPoly.exponential(dims.variables, rates)
    return integrate_ordered_simplex(integrand, dims) / normalization_constant(dims)


def total_power_pep(dims: Dimensions, gamma: RationalLike) -> Fraction:
    """(1 + gamma)^(-NM): the expectation for equal unit weights."""
    return Fraction(1) / (1 + to_rational(gamma)) ** (dims.n * dims.m)


def min_weight_alpha(split: IndexSplit) -> Tuple[Fraction, ...]:
    """alpha_min on every p-index, zero on every s-index."""
    return tuple(split.alpha_min if w != 0 else Fraction(0) for w in split.alpha)


def bound_expectation(mb: MarginalBound) -> OrderedIntegralResult:
    """Integrate r(mu_p) exp(-omega sum mu_p) over the ordered p-domain, as a Laurent polynomial in omega."""
    if not mb.r.is_polynomial():
        raise ValueError("The bounding polynomial must be a pure polynomial")
    total = OrderedIntegralResult({})
    for term in mb.r.terms():
        total = total + ordered_exp_integral(term.powers).scaled(term.coeff)
    return total


def bound_value(mb: MarginalBound, gamma: RationalLike, normalized: bool = True) -> Fraction:
    """The bound's Laurent polynomial at omega = 1 + gamma * alpha_min."""
    omega = 1 + to_rational(gamma) * mb.split.alpha_min
    value = bound_expectation(mb).evaluate(omega)
    if normalized:
        value = value / normalization_constant(mb.dims)
    return value


def diversity_exponent(dims: Dimensions, alpha: Sequence[RationalLike]) -> int:
    """(N - p1 + 1)(M - p1 + 1) where p1 is the first nonzero weight."""
    p1 = split_indices(alpha).p1
    return (dims.n - p1 + 1) * (dims.m - p1 + 1)


def _log10(value: Union[Fraction, float]) -> float:
    if isinstance(value, Fraction):
        return math.log10(value.numerator) - math.log10(value.denominator)
    return math.log10(value)


def fit_log_slope(gammas: Sequence[RationalLike], values: Sequence[Union[Fraction, float]],
                  window: int = DEFAULT_WINDOW) -> float:
    """Least-squares slope of log10(value) against log10(gamma) over the last `window` points."""
    if window < 2 or len(values) < window:
        raise InsufficientPoints(f"Need at least {max(window, 2)} points, got {len(values)}")
    xs, ys = [], []
    for gamma, value in zip(list(gammas)[-window:], list(values)[-window:]):
        gamma = to_rational(gamma)
        if not (gamma > 0 and value > 0 and math.isfinite(value)):
            raise InsufficientPoints(f"Non-positive point (gamma={gamma}, value={value}) in fit window")
        xs.append(_log10(gamma))
        ys.append(_log10(value))
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    return float(slope)


@dataclass
class PepCurve:
    """A PEP curve over a dB grid, with its fitted slope and predicted exponent."""
    dims: Dimensions
    alpha: Tuple[Fraction, ...]
    gammas: List[Fraction]
    gamma_db: List[float]
    values: List[Union[Fraction, float]]
    source: CurveSource
    predicted_exponent: int
    stderr: List[Optional[float]] = field(default_factory=list)
    samples: Optional[int] = None
    fitted_slope: Optional[float] = None

    def to_dataframe(self, exact_column: bool = False) -> pd.DataFrame:
        """Rows in the CSV schema; stderr is empty for exact and bound rows."""
        stderr = self.stderr or [None] * len(self.values)
        rows = []
        for db, value, se in zip(self.gamma_db, self.values, stderr):
            row = {
                'gamma_db': db,
                'value': float(value),
                'stderr': se,
                'source': self.source.value,
                'n': self.dims.n,
                'm': self.dims.m,
                'alpha': format_alpha(self.alpha),
                'predicted_exponent': self.predicted_exponent,
            }
            if exact_column:
                row['exact'] = (f"{value.numerator}/{value.denominator}"
                                if isinstance(value, Fraction) else "")
            rows.append(row)
        columns = CSV_COLUMNS + (['exact'] if exact_column else [])
        return pd.DataFrame(rows, columns=columns)


def slope_fit(curve: PepCurve, window: int = DEFAULT_WINDOW) -> float:
    return fit_log_slope(curve.gammas, curve.values, window)


def attach_slope(curve: PepCurve, window: int = DEFAULT_WINDOW) -> PepCurve:
    """Fill curve.fitted_slope, leaving it None when the window cannot be fitted."""
    try:
        curve.fitted_slope = slope_fit(curve, window)
    except InsufficientPoints as e:
        logger.warning(f"No slope for {curve.dims} alpha={format_alpha(curve.alpha)}: {e}")
        curve.fitted_slope = None
    return curve


def pep_curve(dims: Dimensions, alpha: Sequence[RationalLike], gamma_db_grid: Sequence[float],
              source: CurveSource = CurveSource.EXACT, window: int = DEFAULT_WINDOW,
              workers: int = 1, progress: bool = False) -> PepCurve:
    """
    Exact or bound curve over an ascending dB grid.

    Args:
        dims: Antenna counts
        alpha: Weight vector
        gamma_db_grid: Ascending SNR grid in dB
        source: CurveSource.EXACT or CurveSource.BOUND
        window: Number of trailing points used for the slope fit
        workers: Thread count for evaluating grid points
        progress: Show a tqdm progress bar on stderr

    Returns:
        PepCurve with exact rational values
    """
    if list(gamma_db_grid) != sorted(gamma_db_grid):
        raise ValueError("gamma_db_grid must be ascending")
    check_envelope(dims)
    split = _prepare(dims, alpha)
    gammas = [db_to_gamma(db) for db in gamma_db_grid]

    if source is CurveSource.EXACT:
        def evaluate(gamma):
            return exact_pep(dims, split.alpha, gamma)
    elif source is CurveSource.BOUND:
        mb = marginal_bound(dims, split)
        expectation = bound_expectation(mb)
        constant = normalization_constant(dims)

        def evaluate(gamma):
            return expectation.evaluate(1 + gamma * split.alpha_min) / constant
    else:
        raise ValueError(f"pep_curve only builds exact or bound curves, not {source.value}")

    normalization_constant(dims)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        values = list(tqdm(pool.map(evaluate, gammas), total=len(gammas),
                           desc=f"{source.value} {dims}", unit="point",
                           disable=not progress, leave=False))

    curve = PepCurve(dims, split.alpha, gammas, [float(db) for db in gamma_db_grid], values,
                     source, diversity_exponent(dims, split.alpha))
    logger.debug(f"Built {source.value} curve for {dims} alpha={format_alpha(split.alpha)} "
                 f"over {len(values)} points")
    return attach_slope(curve, window)
