"""Base processor: process(context) reads earlier stages' results from context and adds its own."""
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from models.run_config import RunConfig


class BaseProcessor(ABC):
    def __init__(self, config: dict, run: "RunConfig"):
        self.config = config
        self.run = run

    @abstractmethod
    def process(self, context: dict) -> None:
        """Input/output via context."""
        raise NotImplementedError
