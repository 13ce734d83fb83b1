"""
Exact exponential-polynomial ring for wishbound.

An ExpPoly is a finite sum of terms

    coeff * mu_i^a * mu_j^b * ... * exp(-(c_i*mu_i + c_j*mu_j + ...))

with rational coefficients, nonnegative integer powers and nonnegative
rational rates. Terms are stored sparsely in a dictionary keyed by the
(powers, rates) pair, so two ExpPolys are equal exactly when their
canonical term dictionaries are equal.

Every result in the symbolic path (joint pdfs, bounding polynomials, exact
marginals, PEP expectations) is built from these objects; nothing in here
ever rounds.
"""

import math
import re
import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import (
    BadLimit,
    DivergentIntegral,
    RationalExpUnsupported,
    VariableMismatch,
    ZeroPolynomial,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Powers = Tuple[int, ...]
Rates = Tuple[Fraction, ...]
TermKey = Tuple[Powers, Rates]
RationalLike = Union[int, str, float, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert a number to an exact Fraction.

    Floats go through their shortest decimal repr, so 0.1 becomes 1/10 and
    not the binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Cannot convert {value} to a rational")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"Cannot convert {type(value).__name__} to a rational")


class LimitKind(Enum):
    ZERO = "zero"
    INFINITY = "infinity"
    VARIABLE = "variable"


@dataclass(frozen=True)
class Limit:
    """An integration limit: 0, +infinity or another live variable."""
    kind: LimitKind
    index: Optional[int] = None

    @classmethod
    def zero(cls) -> "Limit":
        return cls(LimitKind.ZERO)

    @classmethod
    def infinity(cls) -> "Limit":
        return cls(LimitKind.INFINITY)

    @classmethod
    def variable(cls, index: int) -> "Limit":
        return cls(LimitKind.VARIABLE, index)

    def __str__(self) -> str:
        if self.kind is LimitKind.VARIABLE:
            return f"mu_{self.index}"
        return "0" if self.kind is LimitKind.ZERO else "inf"


@dataclass(frozen=True)
class ExpTerm:
    """One term of an ExpPoly, in the variable order of its parent."""
    coeff: Fraction
    powers: Powers
    rates: Rates

    @property
    def total_degree(self) -> int:
        return sum(self.powers)

    @property
    def is_polynomial(self) -> bool:
        return all(rate == 0 for rate in self.rates)


def _sort_key(key: TermKey) -> Tuple[Rates, Powers]:
    powers, rates = key
    return rates, powers


class ExpPoly:
    """Immutable sparse sum of ExpTerms over an ordered list of live variables."""

    __slots__ = ("_varnames", "_terms", "_hash")

    def __init__(self, varnames: Sequence[int], terms: Optional[Mapping[TermKey, RationalLike]] = None):
        self._varnames: Tuple[int, ...] = tuple(varnames)
        if len(set(self._varnames)) != len(self._varnames):
            raise VariableMismatch(f"Duplicate variables in {self._varnames}")
        width = len(self._varnames)
        clean: Dict[TermKey, Fraction] = {}
        for (powers, rates), coeff in (terms or {}).items():
            if len(powers) != width or len(rates) != width:
                raise VariableMismatch(
                    f"Term with {len(powers)} powers / {len(rates)} rates "
                    f"does not fit {width} variables"
                )
            if any(p < 0 for p in powers):
                raise ValueError(f"Negative power in {powers}")
            rates = tuple(to_rational(r) for r in rates)
            if any(r < 0 for r in rates):
                raise ValueError(f"Negative rate in {rates}")
            coeff = to_rational(coeff)
            if coeff != 0:
                clean[(tuple(powers), rates)] = coeff
        self._terms = clean
        self._hash: Optional[int] = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, varnames: Tuple[int, ...], terms: Dict[TermKey, Fraction]) -> "ExpPoly":
        # Internal fast path: terms are already canonical.
        poly = cls.__new__(cls)
        poly._varnames = varnames
        poly._terms = {k: v for k, v in terms.items() if v != 0}
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, varnames: Sequence[int]) -> "ExpPoly":
        return cls(varnames)

    @classmethod
    def constant(cls, varnames: Sequence[int], value: RationalLike = 1) -> "ExpPoly":
        width = len(varnames)
        return cls(varnames, {((0,) * width, (ZERO,) * width): value})

    @classmethod
    def monomial(cls, varnames: Sequence[int], powers: Mapping[int, int],
                 coeff: RationalLike = 1, rates: Optional[Mapping[int, RationalLike]] = None) -> "ExpPoly":
        """coeff * prod mu_i^powers[i] * exp(-sum rates[i] mu_i); keys are variable identities."""
        varnames = tuple(varnames)
        rates = rates or {}
        for index in list(powers) + list(rates):
            if index not in varnames:
                raise VariableMismatch(f"mu_{index} is not among {varnames}")
        key = (
            tuple(powers.get(v, 0) for v in varnames),
            tuple(to_rational(rates.get(v, 0)) for v in varnames),
        )
        return cls(varnames, {key: coeff})

    @classmethod
    def variable(cls, varnames: Sequence[int], index: int) -> "ExpPoly":
        return cls.monomial(varnames, {index: 1})

    @classmethod
    def exponential(cls, varnames: Sequence[int], rates: Mapping[int, RationalLike]) -> "ExpPoly":
        return cls.monomial(varnames, {}, 1, rates)

    # -- inspection -------------------------------------------------------

    @property
    def varnames(self) -> Tuple[int, ...]:
        return self._varnames

    def terms(self) -> Iterator[ExpTerm]:
        """Terms in canonical order (by rates, then powers)."""
        for key in sorted(self._terms, key=_sort_key):
            powers, rates = key
            yield ExpTerm(self._terms[key], powers, rates)

    def __iter__(self) -> Iterator[ExpTerm]:
        return self.terms()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        """True when every rate of every term is zero."""
        return all(rate == 0 for _, rates in self._terms for rate in rates)

    def position(self, index: int) -> int:
        try:
            return self._varnames.index(index)
        except ValueError:
            raise VariableMismatch(f"mu_{index} is not a live variable of {self._varnames}") from None

    def constant_value(self) -> Fraction:
        """Value of a polynomial without live variables."""
        if self._varnames:
            raise VariableMismatch(f"Polynomial still depends on {self._varnames}")
        return self._terms.get(((), ()), ZERO)

    # -- ring operations --------------------------------------------------

    def _check_same(self, other: "ExpPoly") -> None:
        if self._varnames != other._varnames:
            raise VariableMismatch(f"Variable lists differ: {self._varnames} vs {other._varnames}")

    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            self._check_same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ExpPoly.constant(self._varnames, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, ZERO) + coeff
        return ExpPoly._raw(self._varnames, out)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly._raw(self._varnames, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            return ExpPoly._raw(self._varnames, {k: v * factor for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[TermKey, Fraction] = {}
        for (pa, ra), ca in self._terms.items():
            for (pb, rb), cb in other._terms.items():
                key = (
                    tuple(x + y for x, y in zip(pa, pb)),
                    tuple(x + y for x, y in zip(ra, rb)),
                )
                out[key] = out.get(key, ZERO) + ca * cb
        return ExpPoly._raw(self._varnames, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ExpPoly division by zero")
            return self * (ONE / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "ExpPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("ExpPoly powers must be nonnegative integers")
        result = ExpPoly.constant(self._varnames, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self._varnames == other._varnames and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._varnames, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ExpPoly({format_poly(self)!r})"

    # -- variable bookkeeping ---------------------------------------------

    def embed(self, varnames: Sequence[int]) -> "ExpPoly":
        """The same polynomial over a superset of the live variables."""
        varnames = tuple(varnames)
        missing = set(self._varnames) - set(varnames)
        if missing:
            raise VariableMismatch(f"Cannot embed: {sorted(missing)} not in {varnames}")
        source = {v: i for i, v in enumerate(self._varnames)}
        picks = [source.get(v) for v in varnames]
        out = {}
        for (powers, rates), coeff in self._terms.items():
            key = (
                tuple(powers[i] if i is not None else 0 for i in picks),
                tuple(rates[i] if i is not None else ZERO for i in picks),
            )
            out[key] = coeff
        return ExpPoly._raw(varnames, out)

    def substitute(self, var: int, limit: Limit) -> "ExpPoly":
        """Replace mu_var by a limit value; the variable leaves the live list."""
        pos = self.position(var)
        new_vars = self._varnames[:pos] + self._varnames[pos + 1:]
        target = None
        if limit.kind is LimitKind.VARIABLE:
            if limit.index == var:
                raise BadLimit(f"Cannot substitute mu_{var} by itself")
            target = new_vars.index(limit.index) if limit.index in new_vars else None
            if target is None:
                raise VariableMismatch(f"Limit mu_{limit.index} is not a live variable of {self._varnames}")
        out: Dict[TermKey, Fraction] = {}
        for (powers, rates), coeff in self._terms.items():
            m, c = powers[pos], rates[pos]
            rest_p = powers[:pos] + powers[pos + 1:]
            rest_r = rates[:pos] + rates[pos + 1:]
            if limit.kind is LimitKind.ZERO:
                if m != 0:
                    continue
                key = (rest_p, rest_r)
            elif limit.kind is LimitKind.INFINITY:
                if c > 0:
                    continue
                if m != 0:
                    raise DivergentIntegral(
                        f"Term mu_{var}^{m} has no decay on mu_{var} at infinity"
                    )
                key = (rest_p, rest_r)
            else:
                rest_p = list(rest_p)
                rest_r = list(rest_r)
                rest_p[target] += m
                rest_r[target] += c
                key = (tuple(rest_p), tuple(rest_r))
            out[key] = out.get(key, ZERO) + coeff
        return ExpPoly._raw(new_vars, out)

    # -- calculus ---------------------------------------------------------

    def antiderivative(self, var: int) -> "ExpPoly":
        """
        Termwise antiderivative in mu_var, over the same variables.

        Uses the closed forms
            int t^m dt            = t^(m+1) / (m+1)
            int t^m e^(-c t) dt   = -e^(-c t) sum_j m!/(m-j)! t^(m-j) / c^(j+1)   (c > 0)
        """
        pos = self.position(var)
        out: Dict[TermKey, Fraction] = {}
        for (powers, rates), coeff in self._terms.items():
            m, c = powers[pos], rates[pos]
            if c == 0:
                pieces = [(Fraction(1, m + 1), m + 1)]
            else:
                pieces = []
                falling = 1
                inv_c = ONE / c
                scale = inv_c
                for j in range(m + 1):
                    pieces.append((-falling * scale, m - j))
                    falling *= m - j
                    scale *= inv_c
            for factor, power in pieces:
                new_p = powers[:pos] + (power,) + powers[pos + 1:]
                key = (new_p, rates)
                out[key] = out.get(key, ZERO) + coeff * factor
        return ExpPoly._raw(self._varnames, out)

    def integrate(self, var: int, lower: Limit, upper: Limit) -> "ExpPoly":
        """Definite integral over mu_var between two limits; mu_var leaves the live list."""
        for limit in (lower, upper):
            if limit.kind is LimitKind.VARIABLE and limit.index == var:
                raise BadLimit(f"Limit of integration over mu_{var} references mu_{var}")
        pos = self.position(var)
        if upper.kind is LimitKind.INFINITY or lower.kind is LimitKind.INFINITY:
            for powers, rates in self._terms:
                if rates[pos] == 0:
                    raise DivergentIntegral(
                        f"Term with mu_{var}^{powers[pos]} has zero rate on mu_{var}"
                    )
        primitive = self.antiderivative(var)
        result = primitive.substitute(var, upper) - primitive.substitute(var, lower)
        logger.debug(f"Integrated mu_{var} over ({lower}, {upper}): {len(self)} -> {len(result)} terms")
        return result

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Exact value of a pure polynomial at a rational point."""
        if len(point) != len(self._varnames):
            raise VariableMismatch(f"Point has {len(point)} coordinates, expected {len(self._varnames)}")
        values = [to_rational(x) for x in point]
        total = ZERO
        for (powers, rates), coeff in self._terms.items():
            if any(rate != 0 for rate in rates):
                raise RationalExpUnsupported("Exact evaluation is only defined for pure polynomials")
            term = coeff
            for x, power in zip(values, powers):
                if power:
                    term *= x ** power
            total += term
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        """IEEE double value at a point; exponentials go through math.exp."""
        if len(point) != len(self._varnames):
            raise VariableMismatch(f"Point has {len(point)} coordinates, expected {len(self._varnames)}")
        values = [float(x) for x in point]
        parts = []
        for (powers, rates), coeff in self._terms.items():
            exponent = 0.0
            monomial = 1.0
            for x, power, rate in zip(values, powers, rates):
                if power:
                    monomial *= x ** power
                if rate:
                    exponent -= float(rate) * x
            parts.append(float(coeff) * monomial * math.exp(exponent))
        return math.fsum(parts)

    # -- degrees ----------------------------------------------------------

    def degrees(self) -> List[int]:
        """Total degree of every term, canonical order."""
        return [term.total_degree for term in self.terms()]

    def smallest_degree(self) -> int:
        return smallest_degree(self)


# -- module-level operations ----------------------------------------------

def ring_add(a: ExpPoly, b: ExpPoly) -> ExpPoly:
    a._check_same(b)
    return a + b


def ring_mul(a: ExpPoly, b: ExpPoly) -> ExpPoly:
    a._check_same(b)
    return a * b


def integrate(p: ExpPoly, var: int, lower: Limit, upper: Limit) -> ExpPoly:
    return p.integrate(var, lower, upper)


def evaluate(p: ExpPoly, point: Sequence[RationalLike]) -> Fraction:
    return p.evaluate(point)


def evaluate_float(p: ExpPoly, point: Sequence[float]) -> float:
    return p.evaluate_float(point)


def smallest_degree(p: ExpPoly) -> int:
    """Minimum total degree over the terms of a nonzero polynomial."""
    if p.is_zero():
        raise ZeroPolynomial("The zero polynomial has no smallest degree")
    return min(sum(powers) for powers, _ in p._terms)


def elementary_integral_bound(m: int, x: float) -> Tuple[float, float]:
    """
    Return (int_0^x y^m e^-y dy, x^(m+1)/(m+1)).

    The first value is obtained through the ring so the comparison exercises
    the same code path as the marginal computations.
    """
    y = ExpPoly.monomial((1, 2), {1: m}, 1, {1: 1})
    exact = y.integrate(1, Limit.zero(), Limit.variable(2)).evaluate_float([x])
    return exact, x ** (m + 1) / (m + 1)


# -- text serialization ---------------------------------------------------

_VAR_RE = re.compile(r"^mu_(\d+)(?:\^(\d+))?$")
_EXP_RE = re.compile(r"^exp\((.*)\)$")


def _format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_poly(p: ExpPoly) -> str:
    """One term per line, preceded by a '# vars:' header."""
    header = "# vars: " + ", ".join(f"mu_{v}" for v in p.varnames)
    lines = [header]
    for term in p.terms():
        factors = [_format_rational(term.coeff)]
        for var, power in zip(p.varnames, term.powers):
            if power == 1:
                factors.append(f"mu_{var}")
            elif power > 1:
                factors.append(f"mu_{var}^{power}")
        decay = [f"{_format_rational(rate)}*mu_{var}"
                 for var, rate in zip(p.varnames, term.rates) if rate]
        if decay:
            factors.append("exp(-" + " - ".join(decay) + ")")
        lines.append(" * ".join(factors))
    return "\n".join(lines) + "\n"


def parse_poly(text: str, varnames: Optional[Sequence[int]] = None) -> ExpPoly:
    """Inverse of format_poly. Without a header, variables are inferred from the terms."""
    parsed = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vars:") and varnames is None:
                names = [name.strip() for name in body[len("vars:"):].split(",") if name.strip()]
                varnames = [int(_VAR_RE.match(name).group(1)) for name in names]
            continue
        factors = line.split(" * ")
        coeff = Fraction(factors[0])
        powers: Dict[int, int] = {}
        rates: Dict[int, Fraction] = {}
        for factor in factors[1:]:
            factor = factor.strip()
            match = _VAR_RE.match(factor)
            if match:
                var = int(match.group(1))
                powers[var] = powers.get(var, 0) + int(match.group(2) or 1)
                continue
            match = _EXP_RE.match(factor)
            if not match:
                raise ValueError(f"Cannot parse factor {factor!r}")
            inner = match.group(1).strip()
            if not inner.startswith("-"):
                raise ValueError(f"Exponent must be negative: {factor!r}")
            for piece in inner[1:].split(" - "):
                rate, var = piece.strip().split("*")
                var = int(_VAR_RE.match(var.strip()).group(1))
                rates[var] = rates.get(var, ZERO) + Fraction(rate)
        parsed.append((coeff, powers, rates))
    if varnames is None:
        varnames = sorted({v for _, powers, rates in parsed for v in list(powers) + list(rates)})
    result = ExpPoly.zero(varnames)
    for coeff, powers, rates in parsed:
        result = result + ExpPoly.monomial(varnames, powers, coeff, rates)
    return result
