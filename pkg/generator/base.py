"""Base generator: generate(context) renders results from context and writes them out."""
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from models.run_config import RunConfig
    from storage.json_store import JSONStore


class BaseGenerator(ABC):
    def __init__(self, config: dict, run: "RunConfig", storage: "JSONStore"):
        self.config = config
        self.run = run
        self.storage = storage

    @abstractmethod
    def generate(self, context: dict) -> None:
        """Render output from context and persist via storage or print to stdout."""
        raise NotImplementedError
