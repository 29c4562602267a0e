"""
Registries: calculus families and presets, plus the collectors, processors and generators
each CLI command runs. build_pipeline() instantiates the plugins configured for a command.
"""
import logging
from pathlib import Path
from typing import Any, Type

import yaml

from calculi.base import Calculus, CalculusId
from calculi.interval import IntervalCalculus
from calculi.linguistic import CutLevels, LinguisticCalculus
from calculi.scalar import ScalarCalculus
from collectors.base import BaseCollector
from collectors.corpus import CorpusCollector
from collectors.judgments import JudgmentsCollector
from collectors.rulebase import RulebaseCollector
from collectors.terms import TermsCollector
from core.errors import ConfigError, UnknownCalculus
from generator.base import BaseGenerator
from processor.base import BaseProcessor
from storage.json_store import JSONStore

logger = logging.getLogger("evret")

# ===== Calculi =====

CALCULUS_FAMILIES: dict[str, Type[Calculus]] = {
    "scalar": ScalarCalculus,
    "interval": IntervalCalculus,
    "linguistic": LinguisticCalculus,
}

PRESETS: dict[str, list[str]] = {
    "scalar": ["scalar.godel", "scalar.product", "scalar.lukasiewicz"],
    "interval": [
        "interval.frechet",
        "interval.support",
        "interval.extension:scalar.godel",
        "interval.mpmt",
    ],
    "linguistic": [
        "linguistic:interval.frechet",
        "linguistic:interval.support",
        "linguistic:interval.extension:scalar.godel",
    ],
}


def get_calculus(family: str) -> Type[Calculus] | None:
    return CALCULUS_FAMILIES.get(family)


def presets(family: str) -> list[str]:
    if family not in PRESETS:
        raise ConfigError(f"unknown calculus family {family!r}; expected one of {', '.join(PRESETS)}")
    return list(PRESETS[family])


def all_presets() -> list[str]:
    return [name for family in PRESETS for name in PRESETS[family]]


def lookup_calculus(
    name: "str | CalculusId",
    levels: CutLevels | None = None,
    hull: bool = False,
) -> Calculus:
    """Instantiate a calculus from its id string, e.g. ``interval.extension:scalar.product``."""
    cid = name if isinstance(name, CalculusId) else CalculusId.parse(name)
    cls = get_calculus(cid.family)
    if cls is None:
        raise UnknownCalculus(str(cid))
    if cls is LinguisticCalculus:
        return cls(cid, levels or CutLevels(), hull)
    return cls(cid)


# ===== Pipeline plugins =====

COLLECTORS: dict[str, Type[BaseCollector]] = {
    "rulebase": RulebaseCollector,
    "corpus": CorpusCollector,
    "terms": TermsCollector,
    "judgments": JudgmentsCollector,
}
PROCESSORS: dict[str, Type[BaseProcessor]] = {}
GENERATORS: dict[str, Type[BaseGenerator]] = {}

# Used when config.yaml has no commands section
DEFAULT_COMMANDS: dict[str, dict[str, list[str]]] = {
    "compile": {
        "collectors": ["rulebase"],
        "processors": ["expansion"],
        "generators": ["compile_summary"],
    },
    "query": {
        "collectors": ["rulebase", "corpus", "terms"],
        "processors": ["expansion", "matching", "ranking"],
        "generators": ["ranking_tsv", "trace_json"],
    },
    "compare": {
        "collectors": ["rulebase", "corpus", "terms", "judgments"],
        "processors": ["expansion", "matching", "ranking", "metrics"],
        "generators": ["comparison_report"],
    },
}


def get_collector(name: str) -> Type[BaseCollector] | None:
    return COLLECTORS.get(name)


def get_processor(name: str) -> Type[BaseProcessor] | None:
    _load_plugins()
    return PROCESSORS.get(name)


def get_generator(name: str) -> Type[BaseGenerator] | None:
    _load_plugins()
    return GENERATORS.get(name)


def _load_plugins() -> None:
    # processors and generators look calculi up here, so they register lazily
    if PROCESSORS and GENERATORS:
        return
    from generator.comparison_report import ComparisonReportGenerator
    from generator.compile_summary import CompileSummaryGenerator
    from generator.ranking_tsv import RankingTsvGenerator
    from generator.trace_json import TraceJsonGenerator
    from processor.expansion import ExpansionProcessor
    from processor.matching import MatchingProcessor
    from processor.metrics import MetricsProcessor
    from processor.ranking import RankingProcessor

    PROCESSORS.setdefault("expansion", ExpansionProcessor)
    PROCESSORS.setdefault("matching", MatchingProcessor)
    PROCESSORS.setdefault("ranking", RankingProcessor)
    PROCESSORS.setdefault("metrics", MetricsProcessor)
    GENERATORS.setdefault("compile_summary", CompileSummaryGenerator)
    GENERATORS.setdefault("ranking_tsv", RankingTsvGenerator)
    GENERATORS.setdefault("trace_json", TraceJsonGenerator)
    GENERATORS.setdefault("comparison_report", ComparisonReportGenerator)


def load_config(config_path: str | Path) -> dict[str, Any]:
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Config not found: {config_path}")
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def build_pipeline(config: dict, run) -> "Pipeline":
    """Instantiate the plugins configured for ``run.command``."""
    from core.pipeline import Pipeline

    commands = config.get("commands") or {}
    plan = commands.get(run.command) or DEFAULT_COMMANDS.get(run.command)
    if plan is None:
        raise ConfigError(f"no pipeline for command {run.command!r}")
    store = JSONStore(run.output_dir)

    collectors: list[BaseCollector] = []
    for name in plan.get("collectors") or []:
        cls = get_collector(name)
        if cls is None:
            logger.warning("Unknown collector: %s", name)
            continue
        collectors.append(cls(config, run, store))

    processors: list[BaseProcessor] = []
    for name in plan.get("processors") or []:
        cls = get_processor(name)
        if cls is None:
            logger.warning("Unknown processor: %s", name)
            continue
        processors.append(cls(config, run))

    generators: list[BaseGenerator] = []
    for name in plan.get("generators") or []:
        cls = get_generator(name)
        if cls is None:
            logger.warning("Unknown generator: %s", name)
            continue
        generators.append(cls(config, run, store))

    return Pipeline(config, run, collectors, processors, generators, store)
