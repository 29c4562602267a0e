"""Shared fixtures: the bundled rulebase, corpus, terms and judgments, plus helpers to evaluate them."""
from pathlib import Path

import pytest
import yaml

from calculi.linguistic import parse_terms
from collectors.corpus import ingest
from collectors.judgments import parse_judgments
from core.evaluator import Evaluator
from core.graph import expand
from core.registry import lookup_calculus
from processor.ranking import rank
from rules.parser import parse_rules

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
RULES_PATH = FIXTURES / "terrorism.rules"
CORPUS_DIR = FIXTURES / "corpus"
TERMS_PATH = FIXTURES / "terms.txt"
JUDGMENTS_PATH = FIXTURES / "judgments.csv"

GOAL = "Terrorism"
SENTINEL = "d00_sentinel"

# scalar.godel at threshold 0.3 with --defuzzify, worked out by hand
GODEL_RANKING = [
    ("d00_sentinel", 0.9964734112),
    ("d01", 0.940024),
    ("d13", 0.93),
    ("d07", 0.8992),
    ("d18", 0.84544),
    ("d19", 0.785232),
    ("d02", 0.7648),
    ("d04", 0.75),
    ("d05", 0.72),
    ("d09", 0.72),
    ("d16", 0.72),
    ("d06", 0.567),
    ("d03", 0.448),
    ("d08", 0.0),
    ("d10", 0.0),
    ("d11", 0.0),
    ("d12", 0.0),
    ("d14", 0.0),
    ("d15", 0.0),
    ("d17", 0.0),
]


@pytest.fixture(scope="session")
def rulebase():
    return parse_rules(RULES_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def graph(rulebase):
    return expand(rulebase, GOAL)


@pytest.fixture(scope="session")
def corpus():
    return ingest(CORPUS_DIR)


@pytest.fixture(scope="session")
def terms():
    return parse_terms(TERMS_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def judgments():
    return parse_judgments(JUDGMENTS_PATH.read_text(encoding="utf-8"))


@pytest.fixture
def rank_fixture(graph, corpus, terms):
    """rank_fixture(name, threshold=0.3, prune=True, **kw) -> (RankedResult, traces by doc)."""

    def run(name, threshold=0.3, prune=True, absent="closed", trace_docs=(), **kwargs):
        evaluator = Evaluator(
            graph,
            lookup_calculus(name),
            threshold=threshold,
            prune=prune,
            absent=absent,
            terms=terms,
            defuzzify=True,
            **kwargs,
        )
        return rank(corpus, evaluator, trace_docs=trace_docs)

    return run


@pytest.fixture
def config_file(tmp_path):
    """Write a config.yaml whose output dir is under tmp_path; extra sections merge over the defaults."""

    def write(**sections):
        config = {
            "engine": {"threshold": 0.0, "prune": True, "absent": "closed", "defuzzify": False},
            "calculi": {
                "default": "scalar.godel",
                "compare": ["interval.frechet", "interval.support", "interval.extension:scalar.godel", "interval.mpmt"],
                "overrides": {},
            },
            "output": {"dir": str(tmp_path / "out"), "precision": 6},
            "system": {"log_level": "WARNING"},
        }
        for key, value in sections.items():
            config.setdefault(key, {}).update(value)
        path = tmp_path / "config.yaml"
        path.write_text(yaml.safe_dump(config), encoding="utf-8")
        return path

    return write


def _drop_stale_log_handlers():
    """Drop evret stream handlers bound to a captured stderr that pytest has since closed."""
    import logging

    logger = logging.getLogger("evret")
    for handler in list(logger.handlers):
        if type(handler) is logging.StreamHandler and getattr(handler.stream, "closed", False):
            logger.removeHandler(handler)


def pytest_runtest_setup(item):
    _drop_stale_log_handlers()


def pytest_runtest_call(item):
    _drop_stale_log_handlers()
