"""Ranking as TSV: ``doc_id<TAB>rank_key<TAB>value-json``, one line per document in rank order."""
import logging
import sys

from generator.base import BaseGenerator
from models.ranking import RankedResult
from models.truth import value_to_dict
from storage.json_store import fixed_json

logger = logging.getLogger("evret")


def render_tsv(result: RankedResult, precision: int = 6) -> str:
    lines = []
    for e in result.entries:
        value = fixed_json(value_to_dict(e.value, precision), precision)
        lines.append(f"{e.doc_id}\t{e.rank_key:.{precision}f}\t{value}")
    return "".join(line + "\n" for line in lines)


class RankingTsvGenerator(BaseGenerator):
    def generate(self, context: dict) -> None:
        results = context.get("results") or {}
        for name, result in results.items():
            text = render_tsv(result, self.run.precision)
            if self.run.output:
                path = self.storage.write_text(self.run.output, text)
                logger.info("Ranking for %s written to %s", name, path)
            else:
                sys.stdout.write(text)
