"""Documents, corpora and relevance judgments."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

_WORD = re.compile(r"[a-z0-9]+")


def word_tokens(text: str) -> tuple[str, ...]:
    """Lowercased alphanumeric runs, in order. Punctuation and case never affect matching."""
    return tuple(_WORD.findall(text.lower()))


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    tokens: tuple[str, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def from_text(cls, doc_id: str, text: str) -> "Document":
        return cls(id=doc_id, text=text, tokens=word_tokens(text))


@dataclass(frozen=True)
class Corpus:
    """Documents sorted by id."""

    documents: tuple[Document, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.documents, key=lambda d: d.id))
        object.__setattr__(self, "documents", ordered)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def get(self, doc_id: str) -> Document | None:
        for d in self.documents:
            if d.id == doc_id:
                return d
        return None


@dataclass(frozen=True)
class Judgments:
    """Ground-truth relevance for one goal concept: doc id -> relevant."""

    relevance: dict[str, bool] = field(default_factory=dict)

    @property
    def relevant(self) -> frozenset[str]:
        return frozenset(doc_id for doc_id, rel in self.relevance.items() if rel)
