"""
Evaluate every document under each requested calculus and rank them.

One expanded graph is shared by all calculi; only the operator table changes between runs.
"""
import logging
from typing import Iterable, Mapping

from calculi.base import Calculus
from calculi.linguistic import CutLevels
from core.errors import EngineError, UnknownDocument
from core.evaluator import Evaluator
from core.graph import InferenceGraph
from core.registry import lookup_calculus
from models.document import Corpus
from models.ranking import RankedEntry, RankedResult
from models.trace import EvaluationTrace
from processor.base import BaseProcessor
from processor.matching import matched_terminals

logger = logging.getLogger("evret")


def rank(
    corpus: Corpus,
    evaluator: Evaluator,
    matches: Mapping[str, frozenset[str]] | None = None,
    trace_docs: Iterable[str] = (),
) -> tuple[RankedResult, dict[str, EvaluationTrace]]:
    """Rank by (rank_key desc, secondary key desc, id asc); R = rank_key >= threshold."""
    graph = evaluator.graph
    terminals = graph.terminals
    keep = set(trace_docs)
    entries: list[RankedEntry] = []
    warnings: dict[str, str] = {}
    traces: dict[str, EvaluationTrace] = {}
    for doc in corpus:
        present = matches[doc.id] if matches is not None else matched_terminals(doc, terminals)
        values = {t.id: evaluator.terminal_value(t.id in present) for t in terminals}
        try:
            value, trace = evaluator.evaluate(doc.id, values)
        except EngineError as e:
            warnings[doc.id] = str(e)
            logger.warning("Doc %s skipped under %s: %s", doc.id, evaluator.calculus.name, e)
            continue
        notes = [r.warning for r in trace.records if r.warning]
        if notes:
            warnings[doc.id] = f"{len(notes)} inconsistent detachment(s) set to unknown"
        entries.append(RankedEntry(doc.id, value))
        if doc.id in keep:
            traces[doc.id] = trace
    result = RankedResult(evaluator.calculus.name, evaluator.threshold, entries, warnings)
    logger.info(
        "Ranking: %s retrieved %d of %d documents at threshold %g",
        result.calculus, len(result.retrieved), len(corpus), result.threshold,
    )
    return result, traces


def build_overrides(
    graph: InferenceGraph, calculus: Calculus, overrides: Mapping[str, str], levels: CutLevels
) -> dict[str, Calculus]:
    """Per-node operator tables from config; entries for other families or absent nodes are ignored."""
    out: dict[str, Calculus] = {}
    for node_id, name in overrides.items():
        if node_id not in graph:
            logger.debug("Override for %s ignored: node not in graph", node_id)
            continue
        calc = lookup_calculus(name, levels)
        if calc.value_family != calculus.value_family:
            logger.debug("Override %s for %s ignored under %s", name, node_id, calculus.name)
            continue
        out[node_id] = calc
    return out


class RankingProcessor(BaseProcessor):
    def process(self, context: dict) -> None:
        graph = context["graph"]
        corpus = context["corpus"]
        terms = context.get("terms")
        threshold = context["threshold"]
        levels = CutLevels.from_config(self.config)

        trace_docs = []
        if self.run.explain_doc:
            if corpus.get(self.run.explain_doc) is None:
                raise UnknownDocument(f"no document {self.run.explain_doc!r} in the corpus")
            trace_docs.append(self.run.explain_doc)

        results: dict[str, RankedResult] = {}
        traces: dict[str, dict[str, EvaluationTrace]] = {}
        failures: dict[str, str] = {}
        for name in self.run.calculi:
            try:
                calculus = lookup_calculus(name, levels)
                evaluator = Evaluator(
                    graph,
                    calculus,
                    threshold=threshold,
                    prune=self.run.prune,
                    absent=self.run.absent,
                    terms=terms,
                    defuzzify=self.run.defuzzify,
                    overrides=build_overrides(graph, calculus, self.run.overrides, levels),
                    echo_actions=self.run.echo_actions,
                )
                result, doc_traces = rank(corpus, evaluator, context.get("matches"), trace_docs)
            except EngineError as e:
                if self.run.command != "compare":
                    raise
                failures[name] = str(e)
                logger.warning("Calculus %s failed and is skipped: %s", name, e)
                continue
            key = result.calculus
            copies = 1
            while key in results:
                copies += 1
                key = f"{result.calculus}#{copies}"
            results[key] = result
            traces[key] = doc_traces

        context["results"] = results
        context["traces"] = traces
        context["failures"] = failures
