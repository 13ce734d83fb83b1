"""
Parametric exponential-polynomial ring in a single positive parameter omega.

Terms have the shape

    coeff * omega^w * theta_1^a_1 ... theta_K^a_K * exp(-omega * (k_1 theta_1 + ... + k_K theta_K))

with an integer (usually negative) omega power w and integer rate multipliers
k_i >= 0. Fully integrating out every theta leaves a Laurent polynomial in
omega, which is how ordered exponential integrals are carried exactly.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exact_ring import Limit, LimitKind, RationalLike, to_rational
from .exceptions import BadLimit, DivergentIntegral, VariableMismatch

logger = logging.getLogger(__name__)

# (omega_pow, powers, omega_rates)
OmegaKey = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class OmegaTerm:
    coeff: Fraction
    omega_pow: int
    powers: Tuple[int, ...]
    omega_rates: Tuple[int, ...]


class OmegaPoly:
    """Immutable sparse sum of OmegaTerms over an ordered list of theta variables."""

    __slots__ = ("_varnames", "_terms")

    def __init__(self, varnames: Sequence[int], terms: Optional[Mapping[OmegaKey, RationalLike]] = None):
        self._varnames = tuple(varnames)
        width = len(self._varnames)
        clean: Dict[OmegaKey, Fraction] = {}
        for (omega_pow, powers, rates), coeff in (terms or {}).items():
            if len(powers) != width or len(rates) != width:
                raise VariableMismatch(f"Term does not fit variables {self._varnames}")
            coeff = to_rational(coeff)
            if coeff != 0:
                key = (int(omega_pow), tuple(powers), tuple(rates))
                clean[key] = clean.get(key, Fraction(0)) + coeff
        self._terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def constant(cls, varnames: Sequence[int], value: RationalLike = 1) -> "OmegaPoly":
        width = len(varnames)
        return cls(varnames, {(0, (0,) * width, (0,) * width): value})

    @classmethod
    def monomial(cls, varnames: Sequence[int], var: int, power: int, omega_rate: int = 1) -> "OmegaPoly":
        """theta_var^power * exp(-omega_rate * omega * theta_var)."""
        varnames = tuple(varnames)
        if var not in varnames:
            raise VariableMismatch(f"theta_{var} is not among {varnames}")
        powers = tuple(power if v == var else 0 for v in varnames)
        rates = tuple(omega_rate if v == var else 0 for v in varnames)
        return cls(varnames, {(0, powers, rates): 1})

    @property
    def varnames(self) -> Tuple[int, ...]:
        return self._varnames

    def terms(self) -> Iterator[OmegaTerm]:
        for key in sorted(self._terms):
            omega_pow, powers, rates = key
            yield OmegaTerm(self._terms[key], omega_pow, powers, rates)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaPoly):
            return NotImplemented
        return self._varnames == other._varnames and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._varnames, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"OmegaPoly(vars={self._varnames}, terms={len(self._terms)})"

    def __add__(self, other: "OmegaPoly") -> "OmegaPoly":
        if self._varnames != other._varnames:
            raise VariableMismatch(f"Variable lists differ: {self._varnames} vs {other._varnames}")
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return OmegaPoly(self._varnames, out)

    def __neg__(self) -> "OmegaPoly":
        return OmegaPoly(self._varnames, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "OmegaPoly") -> "OmegaPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OmegaPoly(self._varnames, {k: v * other for k, v in self._terms.items()})
        if self._varnames != other._varnames:
            raise VariableMismatch(f"Variable lists differ: {self._varnames} vs {other._varnames}")
        out: Dict[OmegaKey, Fraction] = {}
        for (wa, pa, ra), ca in self._terms.items():
            for (wb, pb, rb), cb in other._terms.items():
                key = (wa + wb,
                       tuple(x + y for x, y in zip(pa, pb)),
                       tuple(x + y for x, y in zip(ra, rb)))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return OmegaPoly(self._varnames, out)

    __rmul__ = __mul__

    def position(self, var: int) -> int:
        try:
            return self._varnames.index(var)
        except ValueError:
            raise VariableMismatch(f"theta_{var} is not a live variable of {self._varnames}") from None

    def _substitute(self, var: int, limit: Limit) -> "OmegaPoly":
        pos = self.position(var)
        new_vars = self._varnames[:pos] + self._varnames[pos + 1:]
        target = None
        if limit.kind is LimitKind.VARIABLE:
            if limit.index not in new_vars:
                raise VariableMismatch(f"Limit theta_{limit.index} is not live")
            target = new_vars.index(limit.index)
        out: Dict[OmegaKey, Fraction] = {}
        for (omega_pow, powers, rates), coeff in self._terms.items():
            m, k = powers[pos], rates[pos]
            rest_p = list(powers[:pos] + powers[pos + 1:])
            rest_r = list(rates[:pos] + rates[pos + 1:])
            if limit.kind is LimitKind.ZERO:
                if m:
                    continue
            elif limit.kind is LimitKind.INFINITY:
                if k > 0:
                    continue
                if m:
                    raise DivergentIntegral(f"theta_{var}^{m} has no decay at infinity")
            else:
                rest_p[target] += m
                rest_r[target] += k
            key = (omega_pow, tuple(rest_p), tuple(rest_r))
            out[key] = out.get(key, Fraction(0)) + coeff
        return OmegaPoly(new_vars, out)

    def integrate(self, var: int, lower: Limit, upper: Limit) -> "OmegaPoly":
        """
        Definite integral over theta_var.

        For rate k > 0 the antiderivative of theta^m exp(-k omega theta) is
        -exp(-k omega theta) sum_j m!/(m-j)! theta^(m-j) / (k omega)^(j+1).
        """
        for limit in (lower, upper):
            if limit.kind is LimitKind.VARIABLE and limit.index == var:
                raise BadLimit(f"Limit of integration over theta_{var} references theta_{var}")
        pos = self.position(var)
        primitive: Dict[OmegaKey, Fraction] = {}
        for (omega_pow, powers, rates), coeff in self._terms.items():
            m, k = powers[pos], rates[pos]
            if k == 0:
                pieces = [(Fraction(1, m + 1), m + 1, 0)]
            else:
                pieces = []
                falling = 1
                for j in range(m + 1):
                    pieces.append((Fraction(-falling, k ** (j + 1)), m - j, -(j + 1)))
                    falling *= m - j
            for factor, power, shift in pieces:
                key = (omega_pow + shift, powers[:pos] + (power,) + powers[pos + 1:], rates)
                primitive[key] = primitive.get(key, Fraction(0)) + coeff * factor
        antiderivative = OmegaPoly(self._varnames, primitive)
        return antiderivative._substitute(var, upper) - antiderivative._substitute(var, lower)

    def laurent(self) -> Dict[int, Fraction]:
        """omega exponent -> coefficient, for a polynomial with no live variables."""
        if self._varnames:
            raise VariableMismatch(f"Still depends on theta variables {self._varnames}")
        out: Dict[int, Fraction] = {}
        for (omega_pow, _, _), coeff in self._terms.items():
            out[omega_pow] = out.get(omega_pow, Fraction(0)) + coeff
        return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class OrderedIntegralResult:
    """A Laurent polynomial in omega with its leading (smallest-power) behaviour."""
    laurent: Dict[int, Fraction]
    trace: Tuple[OmegaPoly, ...] = field(default=(), compare=False)

    @property
    def leading_exponent(self) -> int:
        """Least n such that omega^(-n) carries a nonzero coefficient."""
        return min(-w for w in self.laurent)

    @property
    def leading_coeff(self) -> Fraction:
        return self.laurent[-self.leading_exponent]

    def evaluate(self, omega: RationalLike) -> Fraction:
        omega = to_rational(omega)
        return sum((c * omega ** w for w, c in self.laurent.items()), Fraction(0))

    def __add__(self, other: "OrderedIntegralResult") -> "OrderedIntegralResult":
        out = dict(self.laurent)
        for w, c in other.laurent.items():
            out[w] = out.get(w, Fraction(0)) + c
        return OrderedIntegralResult({w: c for w, c in out.items() if c != 0})

    def scaled(self, factor: RationalLike) -> "OrderedIntegralResult":
        factor = to_rational(factor)
        return OrderedIntegralResult({w: c * factor for w, c in self.laurent.items() if c * factor != 0})


def _integrate_ordered(beta: Tuple[int, ...]) -> Tuple[Dict[int, Fraction], List[OmegaPoly]]:
    k = len(beta)
    integrand = OmegaPoly.constant((), 1)
    steps: List[OmegaPoly] = []
    # theta_K innermost; the integrand only ever carries the current variable
    for var in range(k, 0, -1):
        live = (var - 1, var) if var > 1 else (var,)
        lifted = _swap_into(integrand, live, var)
        factor = OmegaPoly.monomial(live, var, beta[var - 1])
        upper = Limit.variable(var - 1) if var > 1 else Limit.infinity()
        integrand = (lifted * factor).integrate(var, Limit.zero(), upper)
        steps.append(integrand)
    return integrand.laurent(), steps


def _swap_into(integrand: OmegaPoly, live: Tuple[int, ...], var: int) -> OmegaPoly:
    """Re-express a polynomial in theta_var (or a constant) over the live pair."""
    out = {}
    for (w, powers, rates), c in integrand._terms.items():
        m = powers[0] if powers else 0
        r = rates[0] if rates else 0
        new_p = tuple(m if v == var else 0 for v in live)
        new_r = tuple(r if v == var else 0 for v in live)
        out[(w, new_p, new_r)] = c
    return OmegaPoly(live, out)


@lru_cache(maxsize=None)
def _cached_laurent(beta: Tuple[int, ...]) -> Tuple[Tuple[int, Fraction], ...]:
    laurent, _ = _integrate_ordered(beta)
    return tuple(sorted(laurent.items()))


def ordered_exp_integral(beta: Sequence[int], trace: bool = False) -> OrderedIntegralResult:
    """
    Integrate theta_1^b_1 ... theta_K^b_K exp(-omega sum theta) over inf > theta_1 > ... > theta_K > 0.

    Args:
        beta: Nonnegative integer exponents, one per theta
        trace: Also return the intermediate polynomial after each integration

    Returns:
        OrderedIntegralResult; trace[k-1] holds the integrand after the k-th
        innermost integration, a polynomial in theta_{K-k} only
    """
    beta = tuple(int(b) for b in beta)
    if not beta:
        raise ValueError("beta must have at least one entry")
    if any(b < 0 for b in beta):
        raise ValueError(f"beta entries must be nonnegative: {beta}")
    if trace:
        laurent, steps = _integrate_ordered(beta)
        return OrderedIntegralResult(laurent, tuple(steps))
    return OrderedIntegralResult(dict(_cached_laurent(beta)))


def gamma_invariant_holds(beta: Sequence[int], step: int, poly: OmegaPoly) -> bool:
    """
    After the step-th innermost integration, every term must satisfy
    -omega_pow + deg(theta_{K-step}) = sum of the last `step` betas + step.
    """
    target = sum(beta[len(beta) - step:]) + step
    return all(-term.omega_pow + sum(term.powers) == target for term in poly.terms())
