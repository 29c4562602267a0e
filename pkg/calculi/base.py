"""Base calculus: the operator table every inference-graph node evaluates through.

A calculus bundles logically related operators (conjunction, disjunction, negation,
detachment, evidence combination) over one value family, plus the ranking and pruning
hooks the engine needs. Instances are immutable and safe to share between evaluators.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, Optional, Sequence

from core.errors import DomainError, UnknownCalculus
from models.truth import TruthValue, WeightLiteral, rank_key, validate

if TYPE_CHECKING:
    from calculi.linguistic import TermDictionary

FAMILIES = ("scalar", "interval", "linguistic")
# Value family carried by each calculus family
VALUE_FAMILY = {"scalar": "scalar", "interval": "interval", "linguistic": "fuzzy"}

BINARY_OPS = ("conjoin", "disjoin", "combine")
OPS = ("conjoin", "disjoin", "negate", "detach", "combine")

_SUFFIX = re.compile(r"^(detach|combine)=([a-z-]+)$")


@dataclass(frozen=True)
class CalculusId:
    """Parsed calculus name, e.g. ``scalar.godel.detach=lukasiewicz`` or ``linguistic:interval.frechet``."""

    family: str
    preset: str
    detach: Optional[str] = None
    combine: Optional[str] = None
    base: Optional["CalculusId"] = None

    @classmethod
    def parse(cls, text: str) -> "CalculusId":
        raw = (text or "").strip()
        if not raw:
            raise UnknownCalculus(text)
        try:
            return cls._parse(raw)
        except UnknownCalculus:
            raise
        except (ValueError, IndexError):
            raise UnknownCalculus(text) from None

    @classmethod
    def _parse(cls, raw: str) -> "CalculusId":
        inner = _nested(raw, "linguistic")
        if inner is not None:
            return cls("linguistic", "linguistic", base=cls._parse(inner))
        inner = _nested(raw, "interval.extension")
        if inner is not None:
            return cls("interval", "extension", base=cls._parse(inner))

        family, _, rest = raw.partition(".")
        if family not in ("scalar", "interval") or not rest:
            raise UnknownCalculus(raw)
        parts = rest.split(".")
        preset, suffixes = parts[0], parts[1:]
        detach = combine = None
        for s in suffixes:
            m = _SUFFIX.match(s)
            if not m:
                raise UnknownCalculus(raw)
            if m.group(1) == "detach":
                detach = m.group(2)
            else:
                combine = m.group(2)
        if family == "interval" and (detach or combine):
            raise UnknownCalculus(raw)
        return cls(family, preset, detach=detach, combine=combine)

    def __str__(self) -> str:
        if self.family == "linguistic":
            return f"linguistic:{self.base}"
        if self.family == "interval" and self.preset == "extension":
            return f"interval.extension:{self.base}"
        s = f"{self.family}.{self.preset}"
        if self.detach:
            s += f".detach={self.detach}"
        if self.combine:
            s += f".combine={self.combine}"
        return s


def _nested(raw: str, head: str) -> str | None:
    """Return the argument of ``head:<arg>`` or ``head(<arg>)``, else None."""
    if raw.startswith(head + ":"):
        return raw[len(head) + 1:]
    if raw.startswith(head + "(") and raw.endswith(")"):
        return raw[len(head) + 1:-1]
    return None


class Calculus(ABC):
    """Operator table over one value family."""

    value_family: str = ""
    # Or / evidence combination is absorbing at top, so a saturated fold can stop early
    saturating_disjoin: bool = True

    def __init__(self, calculus_id: CalculusId):
        self.id = calculus_id

    @property
    def name(self) -> str:
        return str(self.id)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # ----- operators -----

    @abstractmethod
    def conjoin(self, a: TruthValue, b: TruthValue) -> TruthValue:
        raise NotImplementedError

    @abstractmethod
    def disjoin(self, a: TruthValue, b: TruthValue) -> TruthValue:
        raise NotImplementedError

    @abstractmethod
    def negate(self, a: TruthValue) -> TruthValue:
        raise NotImplementedError

    @abstractmethod
    def detach(self, body: TruthValue, weight: TruthValue) -> TruthValue:
        raise NotImplementedError

    @abstractmethod
    def combine(self, a: TruthValue, b: TruthValue) -> TruthValue:
        raise NotImplementedError

    # ----- distinguished elements -----

    @property
    @abstractmethod
    def top(self) -> TruthValue:
        raise NotImplementedError

    @property
    @abstractmethod
    def bottom(self) -> TruthValue:
        raise NotImplementedError

    @property
    @abstractmethod
    def unknown(self) -> TruthValue:
        raise NotImplementedError

    # ----- ranking / pruning -----

    def rank_key(self, value: TruthValue) -> float:
        return rank_key(value)

    def conj_upper_bound(self, partial: TruthValue) -> float:
        """Upper bound on rank_key of any conjunction extending ``partial``.

        Every t-norm is bounded by each argument, and the lower-bound rank of every
        interval conjunction is bounded by either operand's lower bound.
        """
        return self.rank_key(partial)

    @property
    @abstractmethod
    def op_names(self) -> dict[str, str]:
        """Operator labels, used for DOT export and trace records."""
        raise NotImplementedError

    @abstractmethod
    def coerce_weight(
        self,
        weight: WeightLiteral,
        terms: "TermDictionary | None" = None,
        defuzzify: bool = False,
    ) -> TruthValue:
        """Lift a rule weight literal into this calculus' value family."""
        raise NotImplementedError

    # ----- generic application -----

    def apply(self, op: str, inputs: Sequence[TruthValue], weight: TruthValue | None = None) -> TruthValue:
        """Apply an operator by name. Binary operators fold left over the inputs."""
        if op in BINARY_OPS:
            if not inputs:
                raise DomainError(f"{op} needs at least one operand")
            fn = getattr(self, op)
            return reduce(fn, inputs[1:], inputs[0])
        if op == "negate":
            (a,) = inputs
            return self.negate(a)
        if op == "detach":
            (body,) = inputs
            if weight is None:
                raise DomainError("detach needs a rule weight")
            return self.detach(body, weight)
        raise DomainError(f"unknown operator {op!r}")

    def check(self, value: TruthValue) -> None:
        """Raise DomainError unless ``value`` is a valid member of this calculus' family."""
        if getattr(value, "family", None) != self.value_family:
            raise DomainError(f"{self.name} expects {self.value_family} values, got {value!r}")
        problem = validate(value)
        if problem:
            raise DomainError(f"{value!r} violates {problem}")
