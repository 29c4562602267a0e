"""Explanations rebuilt from evaluation traces."""
import pytest

from core.errors import MalformedTrace, UnknownNode
from core.evaluator import Evaluator
from core.explain import explain, render_text
from core.graph import expand
from core.registry import lookup_calculus
from models.trace import EvaluationTrace
from rules.parser import parse_rules

from conftest import SENTINEL

ONE_RULE = 'r: T <- evidence weight 0.8 "x" action "matched {concept} at {value}";'
TWO_CONJUNCTS = (
    'r: T <- implies weight 1 A and B;'
    'a: A <- evidence weight 1 "x";'
    'b: B <- evidence weight 1 "y";'
)


def trace_of(source: str, present: set[str], calculus: str = "scalar.godel", **kwargs) -> EvaluationTrace:
    graph = expand(parse_rules(source), "T")
    ev = Evaluator(graph, lookup_calculus(calculus), **kwargs)
    _, trace = ev.evaluate("doc", {t.id: ev.terminal_value(t.label in present) for t in graph.terminals})
    return trace


def shared_nodes(step: dict) -> list[str]:
    found = [step["node"]] if step.get("shared") else []
    for child in step.get("children", []):
        found.extend(shared_nodes(child))
    return found


class TestExplain:
    def test_root_of_a_one_rule_graph(self):
        out = explain(trace_of(ONE_RULE, {"x"}))
        root = out["derivation"]
        assert root["node"] == "concept:T"
        assert root["output"] == {"scalar": 0.8}
        rule = root["children"][0]
        assert rule["node"] == "rule:r"
        assert rule["weight"] == {"scalar": 0.8}
        terminal = rule["children"][0]
        assert terminal["node"] == "terminal:x"
        assert terminal["matched"] is True
        assert [[s["node"] for s in path] for path in out["paths"]] == [["concept:T"]]

    def test_terminal_path_to_root(self):
        out = explain(trace_of(ONE_RULE, {"x"}), "terminal:x")
        assert [[s["node"] for s in path] for path in out["paths"]] == [["terminal:x", "rule:r", "concept:T"]]
        assert [s["output"] for s in out["paths"][0]] == [{"scalar": 1.0}, {"scalar": 0.8}, {"scalar": 0.8}]

    def test_actions_are_rendered(self):
        out = explain(trace_of(ONE_RULE, {"x"}), "rule:r")
        assert out["derivation"]["actions"] == ["matched T at 0.800000"]
        assert "action: matched T at 0.800000" in render_text(out)

    def test_pruned_step_claims_no_value(self):
        out = explain(trace_of(TWO_CONJUNCTS, {"y"}, threshold=0.3), "concept:B")
        step = out["derivation"]
        assert step["pruned"] is True
        assert step["output"] is None
        assert "children" not in step
        assert "concept:B (prob-sum): pruned" in render_text(out)

    def test_cut_conjunction_is_flagged(self):
        out = explain(trace_of(TWO_CONJUNCTS, {"y"}, threshold=0.3))
        conj = out["derivation"]["children"][0]["children"][0]
        assert conj["node"] == "and:1"
        assert conj["cut"] is True
        assert conj["skipped"] == ["concept:B"]
        assert "[below threshold, skipped 1]" in render_text(out)

    def test_unknown_node(self):
        with pytest.raises(UnknownNode):
            explain(trace_of(ONE_RULE, {"x"}), "concept:Nope")

    def test_linguistic_steps_carry_nearest_term(self, terms):
        source = 'r: T <- implies weight "likely" "x";'
        trace = trace_of(source, {"x"}, calculus="linguistic:interval.frechet", terms=terms)
        out = explain(trace, terms=terms)
        assert out["derivation"]["term"] == "likely"
        assert out["derivation"]["term_distance"] < 0.05
        assert '~ "likely"' in render_text(out)


class TestFixtureExplanations:
    def test_shared_subtrees_are_shown_once(self, rank_fixture):
        _, traces = rank_fixture("scalar.godel", trace_docs=[SENTINEL])
        out = explain(traces[SENTINEL])
        assert "concept:Bombing" in shared_nodes(out["derivation"])
        text = render_text(out)
        assert text.startswith(f"Document {SENTINEL} under scalar.godel (threshold 0.3)\n")
        assert "Derivation of concept:Terrorism:" in text
        assert "(shared, shown above)" in text

    def test_every_path_of_a_shared_terminal(self, rank_fixture):
        _, traces = rank_fixture("scalar.godel", trace_docs=[SENTINEL])
        out = explain(traces[SENTINEL], "terminal:hostage")
        paths = [[s["node"] for s in path] for path in out["paths"]]
        assert len(paths) == 2
        assert all(p[0] == "terminal:hostage" and p[-1] == "concept:Terrorism" for p in paths)
        assert "Path(s) to root:" in render_text(out)

    def test_json_trace_explains_the_same(self, rank_fixture):
        _, traces = rank_fixture("interval.frechet", trace_docs=["d18"])
        original = traces["d18"]
        reloaded = EvaluationTrace.from_dict(original.to_dict())
        assert explain(reloaded, "rule:h2") == explain(original, "rule:h2")

    def test_malformed_trace(self):
        with pytest.raises(MalformedTrace):
            EvaluationTrace.from_dict({"records": []})
        with pytest.raises(MalformedTrace):
            EvaluationTrace.from_dict({"root": "concept:T", "records": [{"kind": "concept"}]})
