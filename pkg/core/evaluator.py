"""
Per-document evaluation of an inference graph under one calculus.

Nodes are evaluated depth-first from the root with memoization, so a shared node is
computed once per document. Threshold semantics:

- a conjunction whose rank falls below the threshold contributes the family's bottom
  (the "cut"); with pruning on, remaining conjuncts are skipped as soon as the
  calculus' upper bound on the partial conjunction drops below the threshold
- with pruning on, disjunctions and evidence combinations stop once the partial
  result saturates at rank 1, for calculi where top is absorbing

Both tests only skip work, so the root value is the same with pruning on or off.
"""
from __future__ import annotations

import logging
from typing import Mapping, Optional

from calculi.base import Calculus
from calculi.linguistic import TermDictionary
from core.errors import CoercionError, DomainError, InconsistentEvidence, UnknownNode
from core.graph import AND, CONCEPT, NOT, OR, RULE, TERMINAL, InferenceGraph, Node
from models.trace import EvaluationTrace, TraceRecord
from models.truth import TruthValue, format_value

logger = logging.getLogger("evret")

ABSENT_POLICIES = ("closed", "unknown")


class _Slots(dict):
    def __missing__(self, key: str) -> str:
        return "{" + key + "}"


def render_action(template: str, **slots: str) -> str:
    """Fill {concept}, {value}, {doc} and {rule}; unknown slots are left as written."""
    try:
        return template.format_map(_Slots(slots))
    except (ValueError, IndexError, AttributeError):
        return template


def prune_check(kind: str, calculus: Calculus, partial: TruthValue, threshold: float) -> bool:
    """True when the remaining children of a node can be skipped without changing its value.

    And: the calculus' upper bound on any extension of the partial conjunction is below
    the threshold. Or and concept folds: the partial result has saturated at rank 1.
    """
    if kind == AND:
        return calculus.conj_upper_bound(partial) < threshold
    if kind in (OR, CONCEPT):
        return calculus.saturating_disjoin and calculus.rank_key(partial) >= 1.0
    return False


class Evaluator:
    def __init__(
        self,
        graph: InferenceGraph,
        calculus: Calculus,
        threshold: float = 0.0,
        prune: bool = True,
        absent: str = "closed",
        terms: TermDictionary | None = None,
        defuzzify: bool = False,
        overrides: Mapping[str, Calculus] | None = None,
        echo_actions: bool = False,
    ):
        if not 0.0 <= threshold <= 1.0:
            raise DomainError(f"threshold {threshold} outside [0, 1]")
        if absent not in ABSENT_POLICIES:
            raise DomainError(f"unknown absent policy {absent!r}")
        self.graph = graph
        self.calculus = calculus
        self.threshold = threshold
        self.prune = prune
        self.absent = absent
        self.echo_actions = echo_actions
        self.overrides = dict(overrides or {})
        for node_id, calc in self.overrides.items():
            if node_id not in graph:
                raise UnknownNode(f"operator override for unknown node {node_id!r}")
            if calc.value_family != calculus.value_family:
                raise CoercionError(
                    f"override {calc.name} for {node_id} is not in the {calculus.value_family} family"
                )

        self.present_value = calculus.top
        self.absent_value = calculus.unknown if absent == "unknown" else calculus.bottom

        self.weights: dict[str, TruthValue] = {}
        for node in graph.nodes.values():
            if node.kind == RULE:
                calc = self.calculus_for(node.id)
                self.weights[node.id] = calc.coerce_weight(node.rule.weight, terms, defuzzify)

    def calculus_for(self, node_id: str) -> Calculus:
        return self.overrides.get(node_id, self.calculus)

    def terminal_value(self, matched: bool) -> TruthValue:
        return self.present_value if matched else self.absent_value

    def evaluate(
        self, doc_id: str, terminal_values: Mapping[str, TruthValue]
    ) -> tuple[TruthValue, EvaluationTrace]:
        """Evaluate the graph for one document. ``terminal_values`` maps terminal node ids to values."""
        run = _Run(self, doc_id, terminal_values)
        value = run.eval(self.graph.root)
        trace = run.trace
        for node_id in self.graph.order:
            if node_id not in run.memo:
                node = self.graph.node(node_id)
                trace.append(self._record(node, pruned=True))
        if run.inconsistent:
            logger.debug("Doc %s: %d inconsistent detachment(s) set to unknown", doc_id, run.inconsistent)
        return value, trace

    def _record(self, node: Node, **fields) -> TraceRecord:
        calc = self.calculus_for(node.id)
        return TraceRecord(
            node=node.id,
            kind=node.kind,
            label=node.label,
            op=node.op,
            operator=calc.op_names.get(node.op, node.op),
            calculus=calc.name,
            children=list(node.children),
            **fields,
        )


class _Run:
    """Mutable state of one document evaluation."""

    def __init__(self, ev: Evaluator, doc_id: str, terminal_values: Mapping[str, TruthValue]):
        self.ev = ev
        self.doc_id = doc_id
        self.terminal_values = terminal_values
        self.memo: dict[str, TruthValue] = {}
        self.inconsistent = 0
        self.trace = EvaluationTrace(
            doc=doc_id,
            calculus=ev.calculus.name,
            threshold=ev.threshold,
            absent=ev.absent,
            root=ev.graph.root,
        )

    def eval(self, node_id: str) -> TruthValue:
        if node_id in self.memo:
            return self.memo[node_id]
        node = self.ev.graph.node(node_id)
        handler = {
            TERMINAL: self._terminal,
            AND: self._and,
            OR: self._fold,
            CONCEPT: self._fold,
            NOT: self._not,
            RULE: self._rule,
        }[node.kind]
        record = handler(node)
        self.memo[node_id] = record.output
        self.trace.append(record)
        logger.debug("Doc %s: %s = %s", self.doc_id, node_id, format_value(record.output))
        return record.output

    def _terminal(self, node: Node) -> TraceRecord:
        if node.id not in self.terminal_values:
            raise DomainError(f"no value supplied for {node.id}")
        value = self.terminal_values[node.id]
        return self.ev._record(node, output=value, matched=value == self.ev.present_value)

    def _and(self, node: Node) -> TraceRecord:
        calc = self.ev.calculus_for(node.id)
        theta = self.ev.threshold
        inputs: list[TruthValue] = []
        partial: Optional[TruthValue] = None
        skipped: list[str] = []
        bound = None
        for i, child in enumerate(node.children):
            value = self.eval(child)
            inputs.append(value)
            partial = value if partial is None else calc.conjoin(partial, value)
            rest = node.children[i + 1:]
            if self.ev.prune and rest and prune_check(AND, calc, partial, theta):
                skipped, bound = list(rest), calc.conj_upper_bound(partial)
                break
        cut = bool(skipped) or calc.rank_key(partial) < theta
        output = calc.bottom if cut else partial
        return self.ev._record(node, inputs=inputs, output=output, skipped=skipped, cut=cut, bound=bound)

    def _fold(self, node: Node) -> TraceRecord:
        calc = self.ev.calculus_for(node.id)
        fn = calc.combine if node.kind == CONCEPT else calc.disjoin
        inputs: list[TruthValue] = []
        partial: Optional[TruthValue] = None
        skipped: list[str] = []
        for i, child in enumerate(node.children):
            value = self.eval(child)
            inputs.append(value)
            partial = value if partial is None else fn(partial, value)
            rest = node.children[i + 1:]
            if self.ev.prune and rest and prune_check(node.kind, calc, partial, self.ev.threshold):
                skipped = list(rest)
                break
        return self.ev._record(node, inputs=inputs, output=partial, skipped=skipped)

    def _not(self, node: Node) -> TraceRecord:
        calc = self.ev.calculus_for(node.id)
        value = self.eval(node.children[0])
        return self.ev._record(node, inputs=[value], output=calc.negate(value))

    def _rule(self, node: Node) -> TraceRecord:
        calc = self.ev.calculus_for(node.id)
        body = self.eval(node.children[0])
        weight = self.ev.weights[node.id]
        warning = None
        try:
            output = calc.detach(body, weight)
        except InconsistentEvidence as e:
            self.inconsistent += 1
            output = calc.unknown
            warning = f"inconsistent evidence: {e}"
        actions = []
        if node.action:
            message = render_action(
                node.action,
                concept=node.rule.head,
                value=format_value(output),
                doc=self.doc_id,
                rule=node.rule.name,
            )
            actions.append(message)
            if self.ev.echo_actions:
                logger.info("Action [%s] %s", self.doc_id, message)
        return self.ev._record(
            node, inputs=[body], output=output, weight=weight, actions=actions, warning=warning
        )


def replay(record: TraceRecord, calculus: Calculus, absent: str = "closed") -> Optional[TruthValue]:
    """Recompute a record's output from its recorded inputs."""
    if record.pruned:
        return None
    kind = record.kind
    if kind == TERMINAL:
        if record.matched:
            return calculus.top
        return calculus.unknown if absent == "unknown" else calculus.bottom
    if kind == AND:
        if record.cut:
            return calculus.bottom
        return calculus.apply("conjoin", record.inputs)
    if kind == OR:
        return calculus.apply("disjoin", record.inputs)
    if kind == CONCEPT:
        return calculus.apply("combine", record.inputs)
    if kind == NOT:
        return calculus.apply("negate", record.inputs)
    if kind == RULE:
        try:
            return calculus.apply("detach", record.inputs, record.weight)
        except InconsistentEvidence:
            return calculus.unknown
    raise DomainError(f"cannot replay node kind {kind!r}")
