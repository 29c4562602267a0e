"""
Trace output for ``query --explain DOC``: the document's trace as JSON and a readable
explanation of the root on stderr.
"""
import logging
import sys

from core.explain import explain, render_text
from generator.base import BaseGenerator

logger = logging.getLogger("evret")


class TraceJsonGenerator(BaseGenerator):
    def generate(self, context: dict) -> None:
        doc_id = self.run.explain_doc
        if not doc_id:
            return
        terms = context.get("terms")
        for name, traces in (context.get("traces") or {}).items():
            trace = traces.get(doc_id)
            if trace is None:
                logger.warning("No trace for %s under %s", doc_id, name)
                continue
            target = self.run.trace_out or f"trace_{doc_id}.json"
            path = self.storage.write_json(target, trace.to_dict(self.run.precision), self.run.precision)
            logger.info("Trace for %s written to %s", doc_id, path)
            sys.stderr.write(render_text(explain(trace, terms=terms)))
