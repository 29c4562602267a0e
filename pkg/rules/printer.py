"""Pretty-printer for rulebases. Output re-parses to an equal Rulebase."""
from __future__ import annotations

from models.rule import And, ConceptRef, Expr, Not, Or, Rule, Rulebase, Terminal
from models.truth import format_decimal, format_weight


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_expr(expr: Expr) -> str:
    if isinstance(expr, ConceptRef):
        return expr.name
    if isinstance(expr, Terminal):
        return _quote(expr.pattern)
    if isinstance(expr, Not):
        return "not " + _operand(expr.child)
    if isinstance(expr, (And, Or)):
        sep = " and " if isinstance(expr, And) else " or "
        return sep.join(_operand(c) for c in expr.children)
    raise TypeError(f"not an expression: {expr!r}")


def _operand(expr: Expr) -> str:
    if isinstance(expr, (And, Or)):
        return f"({format_expr(expr)})"
    return format_expr(expr)


def format_rule(rule: Rule) -> str:
    text = f"{rule.name}: {rule.head} <- {rule.kind} weight {format_weight(rule.weight)} {format_expr(rule.body)}"
    if rule.action is not None:
        text += f" action {_quote(rule.action)}"
    return text + ";"


def format_rulebase(rulebase: Rulebase) -> str:
    lines = []
    if rulebase.threshold is not None:
        lines.append(f"threshold {format_decimal(rulebase.threshold)};")
    lines.extend(format_rule(r) for r in rulebase.rules)
    return "\n".join(lines) + "\n"
