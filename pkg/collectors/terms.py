"""Terms file -> context['terms'] (a TermDictionary, or None when no file is configured)."""
import logging

from calculi.linguistic import parse_terms
from collectors.base import BaseCollector

logger = logging.getLogger("evret")


class TermsCollector(BaseCollector):
    def collect(self, context: dict) -> None:
        if not self.run.terms:
            context["terms"] = None
            return
        terms = parse_terms(self.store.read_text(self.run.terms))
        context["terms"] = terms
        logger.info(
            "Terms: %d primary terms, %d vocabulary entries from %s",
            len(terms.primaries), len(terms.vocabulary), self.run.terms,
        )
