"""Truth values: the engine's universal currency.

Three representations share one interface:

- Scalar: a single degree v in [0, 1]
- Interval: a pair [lo, hi] with 0 <= lo <= hi <= 1 ([0,1] is "completely unknown")
- Fuzzy: a membership vector over an evenly spaced grid on [0, 1]

Values are plain frozen dataclasses. Construction never validates; `validate()` reports
which invariant is broken so parsers can collect errors instead of failing on the first one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Union

import numpy as np

GRID_SIZE = 101
GRID = np.linspace(0.0, 1.0, GRID_SIZE)
GRID_STEP = 1.0 / (GRID_SIZE - 1)

# Canonical rounding for computed membership degrees and complements.
SNAP_DECIMALS = 12
_TOL = 1e-12


def snap(x: float) -> float:
    return round(float(x), SNAP_DECIMALS)


@dataclass(frozen=True)
class Scalar:
    v: float

    family = "scalar"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    family = "interval"

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Fuzzy:
    """Membership vector sampled on GRID. Stored as a tuple so values stay hashable."""

    mu: tuple[float, ...]

    family = "fuzzy"

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "Fuzzy":
        arr = np.round(np.asarray(list(values), dtype=float), SNAP_DECIMALS)
        return cls(tuple(float(x) for x in arr))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.mu, dtype=float)

    @property
    def height(self) -> float:
        return max(self.mu) if self.mu else 0.0


@dataclass(frozen=True)
class LinguisticWeight:
    """A rule weight written as a term name, e.g. "very likely". Resolved against a term dictionary."""

    term: str

    family = "linguistic"


TruthValue = Union[Scalar, Interval, Fuzzy]
WeightLiteral = Union[Scalar, Interval, LinguisticWeight]


# ===== Validation =====

def is_convex(mu: np.ndarray) -> bool:
    """Quasi-concave check: no point strictly below both the max on its left and on its right."""
    if len(mu) < 3:
        return True
    left = np.maximum.accumulate(mu)
    right = np.maximum.accumulate(mu[::-1])[::-1]
    interior = mu[1:-1]
    bound = np.minimum(left[:-2], right[2:])
    return bool(np.all(interior >= bound - _TOL))


def validate(value: Any) -> str | None:
    """Return None if the value satisfies its invariants, else a description of the violated one."""
    if isinstance(value, Scalar):
        if not 0.0 <= value.v:
            return "v >= 0"
        if not value.v <= 1.0:
            return "v <= 1"
        return None
    if isinstance(value, Interval):
        if not 0.0 <= value.lo:
            return "alpha >= 0"
        if not value.hi <= 1.0:
            return "beta <= 1"
        if not value.lo <= value.hi:
            return "alpha <= beta"
        return None
    if isinstance(value, Fuzzy):
        if len(value.mu) != GRID_SIZE:
            return f"length == {GRID_SIZE}"
        arr = value.array
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            return "mu in [0, 1]"
        if not is_convex(arr):
            return "convex"
        return None
    if isinstance(value, LinguisticWeight):
        return None if value.term.strip() else "term name nonempty"
    return f"unknown truth value type {type(value).__name__}"


# ===== Ranking =====

def centroid(value: Fuzzy) -> float:
    arr = value.array
    total = float(arr.sum())
    if total <= 0.0:
        return 0.0
    return float(np.dot(GRID, arr) / total)


def rank_key(value: TruthValue) -> float:
    """Primary ranking key: v, the interval's lower bound, or the fuzzy centroid."""
    if isinstance(value, Scalar):
        return value.v
    if isinstance(value, Interval):
        return value.lo
    if isinstance(value, Fuzzy):
        return centroid(value)
    raise TypeError(f"not a truth value: {value!r}")


def secondary_key(value: TruthValue) -> float:
    """Tie-break key: the interval's upper bound; same as rank_key for the other families."""
    if isinstance(value, Interval):
        return value.hi
    return rank_key(value)


# ===== Serialization =====

def value_to_dict(value: TruthValue, precision: int | None = None) -> dict[str, Any]:
    def r(x: float) -> float:
        return round(x, precision) if precision is not None else x

    if isinstance(value, Scalar):
        return {"scalar": r(value.v)}
    if isinstance(value, Interval):
        return {"interval": [r(value.lo), r(value.hi)]}
    if isinstance(value, Fuzzy):
        return {"fuzzy": {"grid": GRID_SIZE, "mu": [r(x) for x in value.mu]}}
    raise TypeError(f"not a truth value: {value!r}")


def value_from_dict(d: dict[str, Any]) -> TruthValue:
    if "scalar" in d:
        return Scalar(float(d["scalar"]))
    if "interval" in d:
        lo, hi = d["interval"]
        return Interval(float(lo), float(hi))
    if "fuzzy" in d:
        body = d["fuzzy"] or {}
        mu = [float(x) for x in body.get("mu") or []]
        return Fuzzy(tuple(mu))
    raise ValueError(f"unrecognized truth value: {d!r}")


def format_value(value: TruthValue, precision: int = 6) -> str:
    """Short human rendering used in action messages and explanations."""
    if isinstance(value, Scalar):
        return f"{value.v:.{precision}f}"
    if isinstance(value, Interval):
        return f"[{value.lo:.{precision}f}, {value.hi:.{precision}f}]"
    if isinstance(value, Fuzzy):
        return f"fuzzy(centroid={centroid(value):.{precision}f}, height={value.height:.{precision}f})"
    return repr(value)


def format_weight(weight: WeightLiteral) -> str:
    """Rule-file spelling of a weight literal."""
    if isinstance(weight, Scalar):
        return format_decimal(weight.v)
    if isinstance(weight, Interval):
        return f"[{format_decimal(weight.lo)},{format_decimal(weight.hi)}]"
    if isinstance(weight, LinguisticWeight):
        return '"' + weight.term.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"not a weight literal: {weight!r}")


def format_decimal(x: float) -> str:
    # repr round-trips through float() exactly; the rule lexer has no exponent syntax
    s = repr(float(x))
    if "e" in s or "E" in s:
        s = f"{x:.20f}".rstrip("0")
        if s.endswith("."):
            s += "0"
    return s
