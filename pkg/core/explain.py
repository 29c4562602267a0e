"""
Explanations reconstructed from an evaluation trace.

explain() returns a structured form with two parts: the derivation of a node (the
subtree it was computed from) and every path from the node up to the root. render_text()
turns it into the indented text the CLI prints.
"""
from __future__ import annotations

from typing import Any, Optional

from calculi.linguistic import TermDictionary
from models.trace import EvaluationTrace, TraceRecord
from models.truth import Fuzzy, TruthValue, format_value, value_from_dict, value_to_dict

PRECISION = 6


def _step(record: TraceRecord, terms: TermDictionary | None) -> dict[str, Any]:
    def val(v: Optional[TruthValue]) -> Any:
        return value_to_dict(v, PRECISION) if v is not None else None

    step: dict[str, Any] = {
        "node": record.node,
        "kind": record.kind,
        "label": record.label,
        "op": record.op,
        "operator": record.operator,
        "calculus": record.calculus,
        "pruned": record.pruned,
        "output": val(record.output),
        "inputs": [val(v) for v in record.inputs],
        "weight": val(record.weight),
        "actions": list(record.actions),
    }
    if record.matched is not None:
        step["matched"] = record.matched
    if record.skipped:
        step["skipped"] = list(record.skipped)
    if record.cut:
        step["cut"] = True
        if record.bound is not None:
            step["bound"] = round(record.bound, PRECISION)
    if record.warning:
        step["warning"] = record.warning
    if terms is not None and isinstance(record.output, Fuzzy):
        name, distance = terms.approximate(record.output)
        step["term"] = name
        step["term_distance"] = round(distance, PRECISION)
    return step


def _derivation(trace: EvaluationTrace, node_id: str, terms: TermDictionary | None, seen: set[str]) -> dict[str, Any]:
    record = trace.get(node_id)
    step = _step(record, terms)
    if node_id in seen:
        step["shared"] = True
        return step
    seen.add(node_id)
    if not record.pruned:
        step["children"] = [_derivation(trace, c, terms, seen) for c in record.children]
    return step


def _paths(trace: EvaluationTrace, node_id: str) -> list[list[str]]:
    if node_id == trace.root:
        return [[node_id]]
    out = []
    for parent in trace.parents_of(node_id):
        for path in _paths(trace, parent):
            out.append([node_id] + path)
    return out


def explain(trace: EvaluationTrace, node_id: str | None = None, terms: TermDictionary | None = None) -> dict[str, Any]:
    """Structured explanation of ``node_id`` (default: the root). Raises UnknownNode."""
    target = node_id or trace.root
    trace.get(target)
    paths = _paths(trace, target)
    return {
        "doc": trace.doc,
        "calculus": trace.calculus,
        "threshold": trace.threshold,
        "node": target,
        "derivation": _derivation(trace, target, terms, set()),
        "paths": [[_step(trace.get(n), terms) for n in path] for path in paths],
    }


def _describe(step: dict[str, Any]) -> str:
    head = f"{step['node']} ({step['operator'] or step['op']})"
    if step["pruned"]:
        return f"{head}: pruned"
    parts = [head]
    if "matched" in step:
        parts.append("matched" if step["matched"] else "not matched")
    if step["weight"] is not None:
        parts.append(f"weight {_show(step['weight'])}")
    if step["inputs"]:
        parts.append("inputs " + ", ".join(_show(v) for v in step["inputs"]))
    line = "  ".join(parts) + f" -> {_show(step['output'])}"
    if step.get("term"):
        line += f" ~ \"{step['term']}\""
    if step.get("cut"):
        line += " [below threshold"
        if step.get("skipped"):
            line += f", skipped {len(step['skipped'])}"
        line += "]"
    elif step.get("skipped"):
        line += f" [saturated, skipped {len(step['skipped'])}]"
    if step.get("warning"):
        line += f" [{step['warning']}]"
    return line


def _show(raw: Any) -> str:
    if raw is None:
        return "-"
    return format_value(value_from_dict(raw), PRECISION)


def render_text(explanation: dict[str, Any]) -> str:
    lines = [
        f"Document {explanation['doc']} under {explanation['calculus']} "
        f"(threshold {explanation['threshold']:g})",
        f"Derivation of {explanation['node']}:",
    ]

    def walk(step: dict[str, Any], depth: int) -> None:
        suffix = " (shared, shown above)" if step.get("shared") else ""
        lines.append("  " * (depth + 1) + _describe(step) + suffix)
        for message in step["actions"]:
            lines.append("  " * (depth + 2) + f"action: {message}")
        for child in step.get("children", []):
            walk(child, depth + 1)

    walk(explanation["derivation"], 0)
    lines.append("Path(s) to root:")
    for i, path in enumerate(explanation["paths"], start=1):
        lines.append(f"  path {i}:")
        for step in path:
            lines.append(f"    {_describe(step)}")
            for message in step["actions"]:
                lines.append(f"      action: {message}")
    return "\n".join(lines) + "\n"
