"""
Static checks on a parsed rulebase before graph expansion.

validate() collects every problem it finds; require_valid() raises them.
"""
from __future__ import annotations

import logging

import networkx as nx

from core.errors import (
    CyclicRuleBase,
    DuplicateRuleName,
    MalformedEvidenceBody,
    MalformedWeight,
    RuleLanguageError,
    RuleValidationError,
    UndefinedConcept,
)
from models.rule import Or, Rule, Rulebase, Terminal, concept_refs
from models.truth import Interval, LinguisticWeight, Scalar

logger = logging.getLogger("evret")


def concept_graph(rulebase: Rulebase) -> nx.DiGraph:
    """head -> referenced concept, one arc per distinct pair."""
    g = nx.DiGraph()
    for rule in rulebase.rules:
        g.add_node(rule.head)
        for ref in concept_refs(rule.body):
            g.add_edge(rule.head, ref.name)
    return g


def _weight_problem(rule: Rule) -> str | None:
    w = rule.weight
    if isinstance(w, Scalar):
        if not 0.0 <= w.v <= 1.0:
            return f"weight {w.v:g} outside [0, 1]"
    elif isinstance(w, Interval):
        if not (0.0 <= w.lo and w.hi <= 1.0):
            return f"interval weight [{w.lo:g}, {w.hi:g}] outside [0, 1]"
        if w.lo > w.hi:
            return f"interval weight [{w.lo:g}, {w.hi:g}] needs alpha <= beta"
    elif isinstance(w, LinguisticWeight):
        if not w.term.strip():
            return "empty linguistic weight"
    return None


def _evidence_body_ok(rule: Rule) -> bool:
    body = rule.body
    if isinstance(body, Terminal):
        return True
    return isinstance(body, Or) and all(isinstance(c, Terminal) for c in body.children)


def _at(rule: Rule) -> tuple[int | None, int | None]:
    return (rule.pos.line, rule.pos.col) if rule.pos else (None, None)


def validate(rulebase: Rulebase, goal: str) -> list[RuleLanguageError]:
    errors: list[RuleLanguageError] = []
    heads = set(rulebase.heads)

    seen: set[str] = set()
    for rule in rulebase.rules:
        if rule.name in seen:
            errors.append(DuplicateRuleName(f"duplicate rule name {rule.name!r}", *_at(rule)))
        seen.add(rule.name)

    if goal not in heads:
        errors.append(UndefinedConcept(goal))

    for rule in rulebase.rules:
        for ref in concept_refs(rule.body):
            if ref.name not in heads:
                line, col = (ref.pos.line, ref.pos.col) if ref.pos else _at(rule)
                errors.append(UndefinedConcept(ref.name, line, col))
        problem = _weight_problem(rule)
        if problem:
            errors.append(MalformedWeight(f"rule {rule.name}: {problem}", *_at(rule)))
        if rule.is_evidence and not _evidence_body_ok(rule):
            errors.append(MalformedEvidenceBody(
                f"rule {rule.name}: evidence body must be a search string or a disjunction of search strings",
                *_at(rule),
            ))

    try:
        cycle = nx.find_cycle(concept_graph(rulebase))
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        path = [u for u, _ in cycle] + [cycle[-1][1]]
        errors.append(CyclicRuleBase(path))

    if errors:
        logger.debug("Validation: %d problem(s) for goal %s", len(errors), goal)
    return errors


def require_valid(rulebase: Rulebase, goal: str) -> Rulebase:
    errors = validate(rulebase, goal)
    if len(errors) == 1:
        raise errors[0]
    if errors:
        raise RuleValidationError(errors)
    return rulebase
