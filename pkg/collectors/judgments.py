"""Relevance judgments CSV (header ``doc_id,relevant``, relevant in {0, 1}) -> context['judgments']."""
import csv
import io
import logging

from collectors.base import BaseCollector
from core.errors import JudgmentsError
from models.document import Judgments

logger = logging.getLogger("evret")


def parse_judgments(text: str) -> Judgments:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["doc_id", "relevant"]:
        raise JudgmentsError("judgments header must be 'doc_id,relevant'")
    relevance: dict[str, bool] = {}
    for lineno, row in enumerate(reader, start=2):
        doc_id = (row.get("doc_id") or "").strip()
        flag = (row.get("relevant") or "").strip()
        if not doc_id:
            raise JudgmentsError(f"line {lineno}: empty doc_id")
        if flag not in ("0", "1"):
            raise JudgmentsError(f"line {lineno}: relevant must be 0 or 1, got {flag!r}")
        if doc_id in relevance:
            raise JudgmentsError(f"line {lineno}: duplicate doc_id {doc_id!r}")
        relevance[doc_id] = flag == "1"
    return Judgments(relevance)


class JudgmentsCollector(BaseCollector):
    def collect(self, context: dict) -> None:
        if not self.run.judgments:
            context["judgments"] = None
            return
        judgments = parse_judgments(self.store.read_text(self.run.judgments))
        corpus = context.get("corpus")
        if corpus is not None:
            unknown = sorted(set(judgments.relevance) - set(corpus.ids))
            if unknown:
                raise JudgmentsError(f"judgments name documents not in the corpus: {', '.join(unknown)}")
        context["judgments"] = judgments
        logger.info("Judgments: %d relevant of %d judged", len(judgments.relevant), len(judgments.relevance))
