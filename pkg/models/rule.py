"""
Rulebase model: rules, boolean bodies and the head-concept index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from models.truth import WeightLiteral

IMPLIES = "implies"
EVIDENCE = "evidence"
RULE_KINDS = (IMPLIES, EVIDENCE)


@dataclass(frozen=True)
class Pos:
    line: int
    col: int


@dataclass(frozen=True)
class ConceptRef:
    name: str
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class Terminal:
    pattern: str
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class And:
    children: tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    child: "Expr"


Expr = Union[ConceptRef, Terminal, And, Or, Not]


def walk(expr: Expr) -> Iterator[Expr]:
    """Pre-order traversal of an expression tree."""
    yield expr
    if isinstance(expr, (And, Or)):
        for child in expr.children:
            yield from walk(child)
    elif isinstance(expr, Not):
        yield from walk(expr.child)


def concept_refs(expr: Expr) -> list[ConceptRef]:
    return [e for e in walk(expr) if isinstance(e, ConceptRef)]


def terminals(expr: Expr) -> list[Terminal]:
    return [e for e in walk(expr) if isinstance(e, Terminal)]


@dataclass(frozen=True)
class Rule:
    name: str
    head: str
    kind: str
    weight: WeightLiteral
    body: Expr
    action: Optional[str] = None
    pos: Optional[Pos] = field(default=None, compare=False)

    @property
    def is_evidence(self) -> bool:
        return self.kind == EVIDENCE


@dataclass(frozen=True)
class Rulebase:
    rules: tuple[Rule, ...] = ()
    threshold: Optional[float] = None

    def rules_for(self, concept: str) -> list[Rule]:
        """Rules heading ``concept``, in source order."""
        return [r for r in self.rules if r.head == concept]

    @property
    def heads(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.rules:
            seen.setdefault(r.head, None)
        return list(seen)

    @property
    def goal_concepts(self) -> list[str]:
        """Heads that no rule body references, in first-definition order."""
        referenced = {ref.name for r in self.rules for ref in concept_refs(r.body)}
        return [h for h in self.heads if h not in referenced]

    def rule_named(self, name: str) -> Optional[Rule]:
        for r in self.rules:
            if r.name == name:
                return r
        return None
