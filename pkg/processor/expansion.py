"""Validate the rulebase and expand the goal's inference graph into context['graph']."""
import logging

from core.graph import expand
from processor.base import BaseProcessor

logger = logging.getLogger("evret")


class ExpansionProcessor(BaseProcessor):
    def process(self, context: dict) -> None:
        rulebase = context["rulebase"]
        graph = expand(rulebase, self.run.goal)
        context["graph"] = graph
        context["threshold"] = self.run.effective_threshold(rulebase.threshold)
        logger.info("Threshold: %g", context["threshold"])
