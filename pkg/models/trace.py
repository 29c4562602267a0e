"""Evaluation trace: one record per graph node, in evaluation order."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from core.errors import MalformedTrace, UnknownNode
from models.truth import TruthValue, value_from_dict, value_to_dict


@dataclass
class TraceRecord:
    node: str
    kind: str
    label: str
    op: str
    operator: str = ""
    calculus: str = ""
    children: list[str] = field(default_factory=list)
    inputs: list[TruthValue] = field(default_factory=list)
    output: Optional[TruthValue] = None
    weight: Optional[TruthValue] = None
    pruned: bool = False
    skipped: list[str] = field(default_factory=list)
    cut: bool = False
    bound: Optional[float] = None
    actions: list[str] = field(default_factory=list)
    warning: Optional[str] = None
    matched: Optional[bool] = None

    def to_dict(self, precision: int | None = None) -> dict[str, Any]:
        def val(v: Optional[TruthValue]) -> Any:
            return value_to_dict(v, precision) if v is not None else None

        d: dict[str, Any] = {
            "node": self.node,
            "kind": self.kind,
            "label": self.label,
            "op": self.op,
            "operator": self.operator,
            "calculus": self.calculus,
            "children": list(self.children),
            "inputs": [val(v) for v in self.inputs],
            "output": val(self.output),
            "weight": val(self.weight),
            "pruned": self.pruned,
            "skipped": list(self.skipped),
            "cut": self.cut,
            "bound": round(self.bound, precision) if self.bound is not None and precision is not None else self.bound,
            "actions": list(self.actions),
            "warning": self.warning,
        }
        if self.matched is not None:
            d["matched"] = self.matched
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TraceRecord":
        def val(raw: Any) -> Optional[TruthValue]:
            return value_from_dict(raw) if raw is not None else None

        try:
            return cls(
                node=d["node"],
                kind=d["kind"],
                label=d.get("label", ""),
                op=d.get("op", ""),
                operator=d.get("operator", ""),
                calculus=d.get("calculus", ""),
                children=list(d.get("children") or []),
                inputs=[val(v) for v in d.get("inputs") or []],
                output=val(d.get("output")),
                weight=val(d.get("weight")),
                pruned=bool(d.get("pruned", False)),
                skipped=list(d.get("skipped") or []),
                cut=bool(d.get("cut", False)),
                bound=d.get("bound"),
                actions=list(d.get("actions") or []),
                warning=d.get("warning"),
                matched=d.get("matched"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedTrace(f"bad trace record: {e}") from e


@dataclass
class EvaluationTrace:
    doc: str
    calculus: str
    threshold: float
    absent: str
    root: str
    records: list[TraceRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._index = {r.node: r for r in self.records}

    def append(self, record: TraceRecord) -> None:
        self.records.append(record)
        self._index[record.node] = record

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._index

    def get(self, node_id: str) -> TraceRecord:
        record = self._index.get(node_id)
        if record is None:
            raise UnknownNode(f"no node {node_id!r} in trace of {self.doc}")
        return record

    def parents_of(self, node_id: str) -> list[str]:
        out = []
        for r in self.records:
            if node_id in r.children and r.node not in out:
                out.append(r.node)
        return out

    @property
    def root_value(self) -> Optional[TruthValue]:
        return self.get(self.root).output

    def to_dict(self, precision: int | None = None) -> dict[str, Any]:
        return {
            "doc": self.doc,
            "calculus": self.calculus,
            "threshold": self.threshold,
            "absent": self.absent,
            "root": self.root,
            "records": [r.to_dict(precision) for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "EvaluationTrace":
        if not isinstance(d, dict) or "records" not in d or "root" not in d:
            raise MalformedTrace("trace must be an object with 'root' and 'records'")
        records = [TraceRecord.from_dict(r) for r in d.get("records") or []]
        trace = cls(
            doc=d.get("doc", ""),
            calculus=d.get("calculus", ""),
            threshold=float(d.get("threshold", 0.0)),
            absent=d.get("absent", "closed"),
            root=d["root"],
            records=records,
        )
        if trace.root not in trace:
            raise MalformedTrace(f"root {trace.root!r} has no record")
        return trace
