"""
Run configuration for the wishbound command line.

A config file is a flat YAML mapping whose keys are the long flag names:

    n: 3
    m: 3
    alpha: "0,1,0"
    grid: "0:40:5"
    source: exact
    samples: 1000000
    seed: 1

Exact values (alpha, grid) are kept as strings so the file round-trips
without rounding. Flags given on the command line override file values.
"""

import logging
from pathlib import Path
from fractions import Fraction
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

import yaml

from .exceptions import ConfigError
from .pep import DEFAULT_WINDOW, CurveSource

logger = logging.getLogger(__name__)


def parse_alpha(text: str) -> Tuple[Fraction, ...]:
    """'0,0.1,1/2' -> exact rationals."""
    try:
        values = tuple(Fraction(part.strip()) for part in str(text).split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"Invalid alpha {text!r}: {e}") from None
    if not values:
        raise ConfigError(f"Invalid alpha {text!r}: no weights")
    return values


def parse_grid(text: str) -> List[float]:
    """'start:stop:step' in dB, stop included."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"Grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"Grid must be numeric, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ConfigError(f"Grid {text!r} must have step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count) if start + i * step <= stop + 1e-9]


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; all fields mirror a long flag."""
    n: int = 3
    m: int = 3
    alpha: str = "1,0,0"
    grid: str = "0:40:5"
    source: str = CurveSource.EXACT.value
    samples: int = 1_000_000
    seed: int = 1
    workers: int = 1
    window: int = DEFAULT_WINDOW
    out: Optional[str] = None
    svg: Optional[str] = None
    exact_column: bool = False

    def __post_init__(self):
        for name in ("n", "m", "samples", "workers", "window"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.source not in {s.value for s in CurveSource}:
            raise ConfigError(f"source must be one of exact, bound, mc; got {self.source!r}")
        parse_alpha(self.alpha)
        parse_grid(self.grid)

    @property
    def alpha_values(self) -> Tuple[Fraction, ...]:
        return parse_alpha(self.alpha)

    @property
    def grid_values(self) -> List[float]:
        return parse_grid(self.grid)

    @property
    def curve_source(self) -> CurveSource:
        return CurveSource(self.source)

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """A copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        changes = {k: v for k, v in overrides.items() if k in known and v is not None}
        return replace(self, **changes)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
        values = dict(data)
        for key in ("alpha", "grid"):
            if key in values and values[key] is not None:
                values[key] = str(values[key])
        try:
            return cls(**values)
        except TypeError as e:
            raise ConfigError(f"Invalid config: {e}") from None

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        file_path = Path(path)
        if not file_path.exists():
            raise ConfigError(f"Config file not found - {path}")
        try:
            data = yaml.safe_load(file_path.read_text())
        except yaml.YAMLError as e:
            raise ConfigError(f"YAML parsing error in {path}: {e}") from None
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {path} must hold a flat mapping")
        logger.debug(f"Loaded config keys {sorted(data)} from {path}")
        return cls.from_mapping({k.replace("-", "_"): v for k, v in data.items()})
