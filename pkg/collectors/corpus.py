"""
Corpus ingestion: every *.txt file in a directory becomes one document whose id is the
file name without extension. Empty files and empty directories are valid.
"""
import logging
from pathlib import Path

from collectors.base import BaseCollector
from core.errors import ConfigError, CorpusIoError
from models.document import Corpus, Document
from storage.json_store import JSONStore

logger = logging.getLogger("evret")


def ingest(directory: str | Path, store: JSONStore | None = None) -> Corpus:
    store = store or JSONStore()
    root = Path(directory)
    if not root.is_dir():
        raise CorpusIoError(str(root), "not a directory")
    docs = []
    for path in sorted(root.glob("*.txt")):
        if not path.is_file():
            continue
        docs.append(Document.from_text(path.stem, store.read_text(path)))
    corpus = Corpus(tuple(docs))
    logger.info("Corpus: %d documents ingested from %s", len(corpus), root)
    return corpus


class CorpusCollector(BaseCollector):
    def collect(self, context: dict) -> None:
        if not self.run.corpus:
            raise ConfigError("no corpus directory given (--corpus)")
        context["corpus"] = ingest(self.run.corpus, self.store)
