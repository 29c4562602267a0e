"""Base collector: loads one input (rules, corpus, terms, judgments) into the pipeline context."""
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from models.run_config import RunConfig
    from storage.json_store import JSONStore


class BaseCollector(ABC):
    """Base for all collectors."""

    def __init__(self, config: dict, run: "RunConfig", store: "JSONStore"):
        self.config = config
        self.run = run
        self.store = store

    @abstractmethod
    def collect(self, context: dict) -> None:
        """Read the input and put the parsed result into context. Context is shared pipeline state."""
        raise NotImplementedError
