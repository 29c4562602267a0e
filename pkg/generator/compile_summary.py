"""
compile output: graph statistics on stdout, optional DOT file and normalized rule listing.
"""
import logging
import sys

from core.graph import KINDS, stats, to_dot
from core.registry import lookup_calculus
from generator.base import BaseGenerator
from rules.printer import format_rulebase

logger = logging.getLogger("evret")


def render_stats(summary: dict) -> str:
    lines = [
        f"goal: {summary['goal']}",
        f"nodes: {summary['nodes']}",
        f"arcs: {summary['arcs']}",
    ]
    for kind in KINDS:
        lines.append(f"  {kind}: {summary['by_kind'][kind]}")
    lines.append("shared: " + (", ".join(summary["shared"]) or "-"))
    return "\n".join(lines) + "\n"


class CompileSummaryGenerator(BaseGenerator):
    def generate(self, context: dict) -> None:
        graph = context["graph"]
        summary = stats(graph)
        context["stats"] = summary
        sys.stdout.write(render_stats(summary))

        if self.run.print_rules:
            sys.stdout.write(format_rulebase(context["rulebase"]))

        if self.run.dot:
            calculus = lookup_calculus(self.run.calculus) if self.run.calculi else None
            path = self.storage.write_text(self.run.dot, to_dot(graph, calculus))
            logger.info("DOT written to %s", path)
