"""
Symbolic Wishart eigenvalue densities and marginal-pdf upper bounds.

This module provides:
- Dimensions / IndexSplit value types for an (N, M) system and a weight vector
- The joint pdf of the ordered eigenvalues, raw and normalized
- The bounding function rho_hat and the nested integrations that turn it into
  the marginal upper bound r(mu_p) * exp(-sum mu_p)
- The exact marginal pdf, computed by brute-force ordered integration
- The closed-form smallest-degree bookkeeping (DegreeLedger)
"""

import math
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from typing import Sequence, Tuple

from .exact_ring import ExpPoly, Limit, RationalLike, smallest_degree, to_rational
from .exceptions import AllZeroAlpha, EnvelopeExceeded, InvalidAlpha, VariableMismatch, WishboundError

logger = logging.getLogger(__name__)

MAX_EXACT_Y = 4


@dataclass(frozen=True)
class Dimensions:
    """Antenna counts; X and Y are always derived from n and m."""
    n: int
    m: int

    def __post_init__(self):
        for name, value in (("n", self.n), ("m", self.m)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def x(self) -> int:
        return max(self.n, self.m)

    @property
    def y(self) -> int:
        return min(self.n, self.m)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(range(1, self.y + 1))

    def __str__(self) -> str:
        return f"{self.n}x{self.m}"


def check_envelope(dims: Dimensions) -> None:
    """Raise EnvelopeExceeded when min(N, M) is above the supported Y <= 4."""
    if dims.y > MAX_EXACT_Y:
        raise EnvelopeExceeded(
            f"Exact computation supports min(N, M) <= {MAX_EXACT_Y} (Y <= 4); got {dims}"
        )


class SplitCase(Enum):
    ALPHA_ONE_ZERO = "alpha1_zero"
    ALPHA_ONE_POSITIVE = "alpha1_positive"


@dataclass(frozen=True)
class IndexSplit:
    """Partition of 1..Y into weighted (p) and unweighted (s) eigenvalue indices."""
    alpha: Tuple[Fraction, ...]
    p: Tuple[int, ...]
    s: Tuple[int, ...]
    case: SplitCase
    epsilon: int
    alpha_min: Fraction

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def p1(self) -> int:
        return self.p[0]


def split_indices(alpha: Sequence[RationalLike]) -> IndexSplit:
    """
    Split a weight vector into nonzero (p) and zero (s) index lists.

    Args:
        alpha: Nonnegative weights, one per ordered eigenvalue

    Returns:
        IndexSplit with p, s, case, epsilon and alpha_min filled in
    """
    if len(alpha) == 0:
        raise InvalidAlpha("alpha must have at least one entry")
    try:
        weights = tuple(to_rational(a) for a in alpha)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidAlpha(f"Cannot read alpha {list(alpha)!r}: {e}") from None
    if any(w < 0 for w in weights):
        raise InvalidAlpha(f"alpha entries must be nonnegative: {[str(w) for w in weights]}")
    p = tuple(i for i, w in enumerate(weights, start=1) if w != 0)
    s = tuple(i for i, w in enumerate(weights, start=1) if w == 0)
    if not p:
        raise AllZeroAlpha("alpha is all zero; at least one weight must be positive")
    case = SplitCase.ALPHA_ONE_ZERO if weights[0] == 0 else SplitCase.ALPHA_ONE_POSITIVE
    epsilon = sum(1 for i in s if i < p[0])
    return IndexSplit(weights, p, s, case, epsilon, min(weights[i - 1] for i in p))


def split_from_indices(p: Sequence[int], y: int) -> IndexSplit:
    """The split of the unit indicator vector of p (every nonempty p is realizable)."""
    p = tuple(p)
    if not p or any(i < 1 or i > y for i in p) or list(p) != sorted(set(p)):
        raise InvalidAlpha(f"p must be a nonempty ascending subset of 1..{y}, got {p}")
    return split_indices([1 if i in p else 0 for i in range(1, y + 1)])


def check_split(dims: Dimensions, split: IndexSplit) -> None:
    if len(split.alpha) != dims.y:
        raise InvalidAlpha(
            f"alpha has {len(split.alpha)} entries but {dims} has Y={dims.y} eigenvalues"
        )


def _difference_squared(varnames: Tuple[int, ...], i: int, j: int) -> ExpPoly:
    diff = ExpPoly.variable(varnames, i) - ExpPoly.variable(varnames, j)
    return diff * diff


def _vandermonde_product(dims: Dimensions, varnames: Tuple[int, ...],
                         power_vars: Sequence[int], pairs: Sequence[Tuple[int, int]]) -> ExpPoly:
    result = ExpPoly.monomial(varnames, {v: dims.x - dims.y for v in power_vars})
    for i, j in pairs:
        result = result * _difference_squared(varnames, i, j)
    return result


@lru_cache(maxsize=None)
def build_psi(dims: Dimensions) -> ExpPoly:
    """Expanded prod_i mu_i^(X-Y) * prod_{i<j} (mu_i - mu_j)^2 over mu_1..mu_Y."""
    variables = dims.variables
    pairs = [(i, j) for i in variables for j in variables if j > i]
    return _vandermonde_product(dims, variables, variables, pairs)


def build_g(dims: Dimensions, split: IndexSplit) -> ExpPoly:
    """The factor of psi that only involves the p-variables, over the p-variables."""
    check_split(dims, split)
    pairs = [(i, j) for i in split.p for j in split.p if j > i]
    return _vandermonde_product(dims, split.p, split.p, pairs)


def build_psi_quotient(dims: Dimensions, split: IndexSplit) -> ExpPoly:
    """psi / g over mu_1..mu_Y, built from the factors of psi that g does not contain."""
    check_split(dims, split)
    variables = dims.variables
    p = set(split.p)
    pairs = [(i, j) for i in variables for j in variables
             if j > i and not (i in p and j in p)]
    return _vandermonde_product(dims, variables, split.s, pairs)


def _unit_exponential(varnames: Sequence[int], indices: Sequence[int]) -> ExpPoly:
    return ExpPoly.exponential(varnames, {i: 1 for i in indices})


def integrate_ordered_simplex(p: ExpPoly, dims: Dimensions) -> Fraction:
    """
    Integrate p over inf > mu_1 > ... > mu_Y > 0.

    mu_Y is integrated first over (0, mu_{Y-1}); mu_1 goes last over (0, inf).
    """
    if p.varnames != dims.variables:
        raise VariableMismatch(f"Expected a polynomial over {dims.variables}, got {p.varnames}")
    for var in reversed(dims.variables):
        upper = Limit.variable(var - 1) if var > 1 else Limit.infinity()
        p = p.integrate(var, Limit.zero(), upper)
    return p.constant_value()


def build_joint_pdf(dims: Dimensions, normalized: bool = True) -> ExpPoly:
    """psi * exp(-sum mu_j), optionally divided by the exact normalization constant."""
    pdf = build_psi(dims) * _unit_exponential(dims.variables, dims.variables)
    if normalized:
        pdf = pdf / normalization_constant(dims)
    return pdf


@lru_cache(maxsize=None)
def normalization_constant(dims: Dimensions) -> Fraction:
    """Exact integral of the unnormalized joint pdf over the ordered simplex."""
    constant = integrate_ordered_simplex(build_joint_pdf(dims, normalized=False), dims)
    logger.debug(f"Normalization constant for {dims}: {constant}")
    return constant


def closed_form_normalization(dims: Dimensions) -> Fraction:
    """prod_{i=1}^{Y} (X-i)! (Y-i)!"""
    total = 1
    for i in range(1, dims.y + 1):
        total *= math.factorial(dims.x - i) * math.factorial(dims.y - i)
    return Fraction(total)


def build_rho_hat(dims: Dimensions, split: IndexSplit) -> ExpPoly:
    """psi with only the p-exponentials kept, plus exp(-mu_1) when alpha_1 = 0."""
    check_split(dims, split)
    retained = list(split.p)
    if split.case is SplitCase.ALPHA_ONE_ZERO:
        retained.insert(0, 1)
    return build_psi(dims) * _unit_exponential(dims.variables, retained)


def rho_hat_dominates(dims: Dimensions, split: IndexSplit, point: Sequence[float]) -> bool:
    """Float check that rho(mu) <= rho_hat(mu) at a point of the positive orthant."""
    rho = build_joint_pdf(dims, normalized=False).evaluate_float(point)
    rho_hat = build_rho_hat(dims, split).evaluate_float(point)
    return rho <= rho_hat + 1e-12 * abs(rho_hat)


@dataclass(frozen=True)
class DegreeLedger:
    """Closed-form degree bookkeeping for the bounding polynomial r = g * h."""
    d_g_smallest: int
    d_h_org: int
    d_h_vanishing: int
    d_h_added: int

    @property
    def d_r_smallest(self) -> int:
        return self.d_g_smallest + self.d_h_org - self.d_h_vanishing + self.d_h_added


def degree_ledger(dims: Dimensions, split: IndexSplit) -> DegreeLedger:
    check_split(dims, split)
    x, y, k, p1 = dims.x, dims.y, split.k, split.p1
    d_g = k * (x - y) + k * (k - 1)
    d_org = (y - k) * (x - y) + y * (y - 1) - k * (k - 1)
    if split.case is SplitCase.ALPHA_ONE_ZERO:
        vanishing = (p1 - 1) * (x - y) + 2 * y * (p1 - 1) - p1 * (p1 - 1)
        added = y - k - p1 + 1
    else:
        vanishing = 0
        added = y - k
    return DegreeLedger(d_g, d_org, vanishing, added)


def theorem_degree(dims: Dimensions, split: IndexSplit) -> int:
    """(N - p1 + 1)(M - p1 + 1) - K"""
    return (dims.n - split.p1 + 1) * (dims.m - split.p1 + 1) - split.k


@dataclass(frozen=True)
class MarginalBound:
    """The bounding polynomial r = g * h over the p-variables."""
    dims: Dimensions
    split: IndexSplit
    g: ExpPoly
    h: ExpPoly
    r: ExpPoly
    smallest_degree: int
    ledger: DegreeLedger

    @property
    def predicted_degree(self) -> int:
        return theorem_degree(self.dims, self.split)

    def agrees(self) -> bool:
        """Computed degree, ledger and closed form all coincide."""
        return self.smallest_degree == self.ledger.d_r_smallest == self.predicted_degree

    def density(self, normalized: bool = True) -> ExpPoly:
        """f_hat = r * exp(-sum mu_p), over the joint pdf's normalization when asked."""
        f_hat = self.r * _unit_exponential(self.split.p, self.split.p)
        if normalized:
            f_hat = f_hat / normalization_constant(self.dims)
        return f_hat


def marginal_bound(dims: Dimensions, split: IndexSplit) -> MarginalBound:
    """
    Integrate psi / g over the s-variables to get h, then r = g * h.

    s-variables go innermost-first in decreasing index with limits
    (0, mu_{s-1}); when alpha_1 = 0, mu_1 goes last over (0, inf) carrying
    exp(-mu_1).
    """
    check_split(dims, split)
    variables = dims.variables
    integrand = build_psi_quotient(dims, split)
    if split.case is SplitCase.ALPHA_ONE_ZERO:
        integrand = integrand * _unit_exponential(variables, [1])
    try:
        for var in reversed(split.s):
            upper = Limit.infinity() if var == 1 else Limit.variable(var - 1)
            integrand = integrand.integrate(var, Limit.zero(), upper)
    except WishboundError as e:
        raise AssertionError(f"Bound integration failed for {dims}, p={split.p}: {e}") from e
    h = integrand
    if not h.is_polynomial():
        raise AssertionError(f"h for {dims}, p={split.p} still carries exponentials")
    g = build_g(dims, split)
    r = g * h
    bound = MarginalBound(dims, split, g, h, r, smallest_degree(r), degree_ledger(dims, split))
    logger.debug(f"Bound for {dims} p={split.p}: {len(r)} terms, smallest degree {bound.smallest_degree} "
                 f"(predicted {bound.predicted_degree})")
    return bound


def _neighbours(live: Sequence[int], var: int) -> Tuple[Limit, Limit]:
    below = [v for v in live if v > var]
    above = [v for v in live if v < var]
    lower = Limit.variable(min(below)) if below else Limit.zero()
    upper = Limit.variable(max(above)) if above else Limit.infinity()
    return lower, upper


def exact_marginal(dims: Dimensions, p: Sequence[int]) -> ExpPoly:
    """
    The normalized marginal pdf of (mu_p1, ..., mu_pK).

    Integrates the largest-index remaining s-variable first, between its
    nearest live neighbours on the ordered domain.
    """
    p = tuple(p)
    split = split_from_indices(p, dims.y)
    pdf = build_joint_pdf(dims, normalized=True)
    try:
        for var in reversed(split.s):
            lower, upper = _neighbours(pdf.varnames, var)
            pdf = pdf.integrate(var, lower, upper)
    except WishboundError as e:
        raise AssertionError(f"Exact marginal failed for {dims}, p={p}: {e}") from e
    return pdf


def random_ordered_point(rng, k: int, scale: float) -> Tuple[float, ...]:
    """k strictly decreasing positive floats drawn uniformly on (0, scale)."""
    values = sorted(rng.uniform(0.0, scale, size=k), reverse=True)
    return tuple(float(v) for v in values)
