"""
Terminal matching: a search string matches a document when its word tokens occur
contiguously in the document's token sequence (case-insensitive phrase match, so
"bomb" does not match "bombast").
"""
import logging
from typing import Iterable

from calculi.base import Calculus
from core.errors import UnsupportedValue
from core.graph import Node
from models.document import Corpus, Document, word_tokens
from models.truth import TruthValue
from processor.base import BaseProcessor

logger = logging.getLogger("evret")


def contains_phrase(tokens: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    if n == 0:
        return False
    first = phrase[0]
    for i in range(len(tokens) - n + 1):
        if tokens[i] == first and tokens[i:i + n] == phrase:
            return True
    return False


def match_terminal(document: Document, pattern: str) -> bool:
    return contains_phrase(document.tokens, word_tokens(pattern))


def matched_terminals(document: Document, terminals: Iterable[Node]) -> frozenset[str]:
    """Ids of the terminal nodes present in the document."""
    return frozenset(t.id for t in terminals if contains_phrase(document.tokens, t.tokens))


def terminal_values(
    corpus: Corpus,
    terminals: list[Node],
    calculus: Calculus,
    absent: str = "closed",
) -> dict[str, dict[str, TruthValue]]:
    """Per document: terminal id -> top if present, else bottom (closed) or unknown."""
    present_value = calculus.top
    if absent == "unknown":
        try:
            absent_value = calculus.unknown
        except UnsupportedValue:
            raise UnsupportedValue(f"{calculus.name} has no 'unknown' value for absent terminals") from None
    else:
        absent_value = calculus.bottom
    out: dict[str, dict[str, TruthValue]] = {}
    for doc in corpus:
        present = matched_terminals(doc, terminals)
        out[doc.id] = {t.id: present_value if t.id in present else absent_value for t in terminals}
    return out


class MatchingProcessor(BaseProcessor):
    """Records which terminals each document contains; values are assigned per calculus later."""

    def process(self, context: dict) -> None:
        graph = context["graph"]
        corpus = context["corpus"]
        terminals = graph.terminals
        matches = {doc.id: matched_terminals(doc, terminals) for doc in corpus}
        context["matches"] = matches
        hits = sum(len(m) for m in matches.values())
        logger.info("Matching: %d terminals against %d documents, %d hits", len(terminals), len(corpus), hits)
