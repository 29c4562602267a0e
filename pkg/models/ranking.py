"""Ranked retrieval result for one calculus."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from models.truth import TruthValue, rank_key, secondary_key, value_to_dict


@dataclass(frozen=True)
class RankedEntry:
    doc_id: str
    value: TruthValue

    @property
    def rank_key(self) -> float:
        return rank_key(self.value)

    @property
    def secondary_key(self) -> float:
        return secondary_key(self.value)

    def sort_key(self) -> tuple:
        return (-self.rank_key, -self.secondary_key, self.doc_id)

    def to_dict(self, precision: int = 6) -> dict[str, Any]:
        return {
            "doc_id": self.doc_id,
            "rank_key": round(self.rank_key, precision),
            "value": value_to_dict(self.value, precision),
        }


@dataclass
class RankedResult:
    calculus: str
    threshold: float
    entries: list[RankedEntry] = field(default_factory=list)
    warnings: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = sorted(self.entries, key=RankedEntry.sort_key)

    @property
    def order(self) -> list[str]:
        return [e.doc_id for e in self.entries]

    @property
    def retrieved(self) -> list[str]:
        """Documents with rank_key >= threshold, in ranking order."""
        return [e.doc_id for e in self.entries if e.rank_key >= self.threshold]

    def value_of(self, doc_id: str) -> TruthValue | None:
        for e in self.entries:
            if e.doc_id == doc_id:
                return e.value
        return None

    def to_dict(self, precision: int = 6) -> dict[str, Any]:
        return {
            "calculus": self.calculus,
            "threshold": self.threshold,
            "entries": [e.to_dict(precision) for e in self.entries],
            "retrieved": self.retrieved,
            "warnings": dict(self.warnings),
        }
