"""
Pipeline: runs the collect -> process -> generate stages of one command.
run_stage(stage_name) supports collect / process / generate; run() executes all three.
Stages share state through a context dict.
"""
import logging
import time
from typing import Any

from core.errors import EngineError
from models.run_config import RunConfig
from storage.json_store import JSONStore

logger = logging.getLogger("evret")

STAGES = ("collect", "process", "generate")


class Pipeline:
    def __init__(
        self,
        config: dict,
        run: RunConfig,
        collectors: list,
        processors: list,
        generators: list,
        storage: JSONStore,
    ):
        self.config = config
        self.run_config = run
        self.collectors = collectors
        self.processors = processors
        self.generators = generators
        self.storage = storage
        self._context: dict[str, Any] = {"run": run}

    @property
    def context(self) -> dict[str, Any]:
        return self._context

    def run(self) -> dict[str, Any]:
        for stage in STAGES:
            self._execute_stage(stage)
        return self._context

    def run_stage(self, stage_name: str) -> None:
        """Execute a single stage: collect | process | generate."""
        if stage_name == "collect":
            self._run_collect()
        elif stage_name == "process":
            self._run_process()
        elif stage_name == "generate":
            self._run_generate()
        else:
            raise ValueError(f"Unknown stage: {stage_name}")

    def _execute_stage(self, stage_name: str) -> None:
        started = time.perf_counter()
        logger.debug("[%s] start", stage_name)
        try:
            self.run_stage(stage_name)
        except EngineError as e:
            logger.error("[%s] failed: %s", stage_name, e)
            raise
        except Exception as e:
            logger.exception("[%s] failed: %s", stage_name, e)
            raise
        logger.info("[%s] done in %.2fs", stage_name, time.perf_counter() - started)

    def _run_collect(self) -> None:
        for c in self.collectors:
            c.collect(self._context)

    def _run_process(self) -> None:
        for p in self.processors:
            p.process(self._context)

    def _run_generate(self) -> None:
        for g in self.generators:
            g.generate(self._context)
