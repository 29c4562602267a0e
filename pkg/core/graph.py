"""
Backward inference graph.

expand() builds the complete graph for a goal concept before any document is seen.
Concepts and terminals are shared: each distinct concept name and each distinct
normalized search string gets exactly one node, however often it is referenced.
Connective nodes (and/or/not) are numbered in depth-first order.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from calculi.base import Calculus
from models.document import word_tokens
from models.rule import And, ConceptRef, Expr, Not, Or, Rule, Rulebase, Terminal
from rules.validator import require_valid

logger = logging.getLogger("evret")

CONCEPT = "concept"
RULE = "rule"
AND = "and"
OR = "or"
NOT = "not"
TERMINAL = "terminal"
KINDS = (CONCEPT, RULE, AND, OR, NOT, TERMINAL)

# Calculus operator each node kind evaluates through
OP_BY_KIND = {
    CONCEPT: "combine",
    RULE: "detach",
    AND: "conjoin",
    OR: "disjoin",
    NOT: "negate",
    TERMINAL: "match",
}


@dataclass
class Node:
    id: str
    kind: str
    label: str
    children: list[str] = field(default_factory=list)
    parents: list[str] = field(default_factory=list)
    rule: Optional[Rule] = None
    tokens: tuple[str, ...] = ()

    @property
    def op(self) -> str:
        return OP_BY_KIND[self.kind]

    @property
    def action(self) -> Optional[str]:
        return self.rule.action if self.rule else None


class InferenceGraph:
    def __init__(self, goal: str, nodes: dict[str, Node], threshold: Optional[float] = None):
        self.goal = goal
        self.root = concept_id(goal)
        self.nodes = nodes
        self.threshold = threshold
        self.dag = nx.DiGraph()
        self.dag.add_nodes_from(nodes)
        for node in nodes.values():
            for child in node.children:
                self.dag.add_edge(node.id, child)
        # children before parents, ties in creation order
        created = {nid: i for i, nid in enumerate(nodes)}
        self.order: list[str] = list(nx.lexicographical_topological_sort(
            self.dag.reverse(copy=False), key=created.__getitem__
        ))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self.nodes

    def node(self, node_id: str) -> Node:
        return self.nodes[node_id]

    @property
    def terminals(self) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind == TERMINAL]

    @property
    def arc_count(self) -> int:
        return sum(len(n.children) for n in self.nodes.values())

    def subgraph_size(self, node_id: str) -> int:
        """Distinct nodes reachable from ``node_id``, itself included."""
        return 1 + len(nx.descendants(self.dag, node_id))


def concept_id(name: str) -> str:
    return f"{CONCEPT}:{name}"


def rule_id(name: str) -> str:
    return f"{RULE}:{name}"


def terminal_key(pattern: str) -> str:
    return " ".join(word_tokens(pattern))


def terminal_id(pattern: str) -> str:
    return f"{TERMINAL}:{terminal_key(pattern)}"


class _Expander:
    def __init__(self, rulebase: Rulebase):
        self.rulebase = rulebase
        self.nodes: dict[str, Node] = {}
        self.counter = 0

    def _link(self, parent: Node, child_id: str) -> None:
        parent.children.append(child_id)
        self.nodes[child_id].parents.append(parent.id)

    def concept(self, name: str) -> str:
        nid = concept_id(name)
        if nid in self.nodes:
            return nid
        node = Node(nid, CONCEPT, name)
        self.nodes[nid] = node
        for rule in self.rulebase.rules_for(name):
            rnode = Node(rule_id(rule.name), RULE, rule.name, rule=rule)
            self.nodes[rnode.id] = rnode
            body = self.expr(rule.body)
            self._link(rnode, body)
            self._link(node, rnode.id)
        return nid

    def expr(self, expr: Expr) -> str:
        if isinstance(expr, ConceptRef):
            return self.concept(expr.name)
        if isinstance(expr, Terminal):
            nid = terminal_id(expr.pattern)
            if nid not in self.nodes:
                self.nodes[nid] = Node(nid, TERMINAL, expr.pattern, tokens=word_tokens(expr.pattern))
            return nid
        self.counter += 1
        if isinstance(expr, Not):
            node = Node(f"{NOT}:{self.counter}", NOT, "not")
            self.nodes[node.id] = node
            self._link(node, self.expr(expr.child))
            return node.id
        kind = AND if isinstance(expr, And) else OR
        node = Node(f"{kind}:{self.counter}", kind, kind)
        self.nodes[node.id] = node
        for child in expr.children:
            self._link(node, self.expr(child))
        return node.id


def expand(rulebase: Rulebase, goal: str) -> InferenceGraph:
    """Validate the rulebase and build the complete backward graph rooted at ``goal``."""
    require_valid(rulebase, goal)
    expander = _Expander(rulebase)
    expander.concept(goal)
    graph = InferenceGraph(goal, expander.nodes, rulebase.threshold)
    for node in graph.nodes.values():
        if node.kind == CONCEPT:
            node.children = order_children(graph, node.id)
    logger.info(
        "Graph: goal %s expanded to %d nodes, %d arcs", goal, len(graph), graph.arc_count
    )
    return graph


def order_children(graph: InferenceGraph, concept: str) -> list[str]:
    """Evidence rules first in source order, then implies rules by ascending subgraph size."""
    node = graph.node(concept)
    rules = list(node.children)
    positions = {cid: i for i, cid in enumerate(rules)}

    def key(cid: str) -> tuple:
        rule = graph.node(cid).rule
        if rule.is_evidence:
            return (0, 0, positions[cid])
        return (1, graph.subgraph_size(cid), positions[cid])

    return sorted(rules, key=key)


def stats(graph: InferenceGraph) -> dict:
    counts = Counter(n.kind for n in graph.nodes.values())
    return {
        "goal": graph.goal,
        "nodes": len(graph),
        "arcs": graph.arc_count,
        "by_kind": {k: counts.get(k, 0) for k in KINDS},
        "shared": sorted(n.id for n in graph.nodes.values() if len(n.parents) > 1),
    }


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: InferenceGraph, calculus: Calculus | None = None) -> str:
    """Graphviz DOT text; labels carry node kind, name and operator name."""
    ops = calculus.op_names if calculus is not None else {}
    lines = [f'digraph "{_dot_escape(graph.goal)}" {{', "  rankdir=BT;"]
    shapes = {CONCEPT: "box", RULE: "ellipse", TERMINAL: "note"}
    for node in graph.nodes.values():
        op = ops.get(node.op, node.op)
        label = f"{node.kind}\\n{_dot_escape(node.label)}\\n{_dot_escape(op)}"
        if node.rule is not None:
            label += f"\\n{node.rule.kind}"
        shape = shapes.get(node.kind, "circle")
        lines.append(f'  "{_dot_escape(node.id)}" [label="{label}", shape={shape}];')
    for node in graph.nodes.values():
        for child in node.children:
            lines.append(f'  "{_dot_escape(child)}" -> "{_dot_escape(node.id)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
