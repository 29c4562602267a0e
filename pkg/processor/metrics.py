"""
Comparison metrics between rankings: Spearman and Kendall (tau-b) rank correlation,
Jaccard overlap of retrieved sets, precision and recall against judgments, and the mean
interval width for interval-valued results.

Documents that tie on both ranking keys share an average rank. Precision and recall are
computed as exact fractions; an empty denominator is reported as "n/a".
"""
import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional

from scipy import stats

from calculi.linguistic import TermDictionary
from core.errors import MismatchedCorpora
from models.document import Judgments
from models.ranking import RankedResult
from models.truth import Fuzzy, Interval
from processor.base import BaseProcessor

logger = logging.getLogger("evret")

PRECISION = 6
UNDEFINED = "n/a"


def _key_codes(result: RankedResult, ids: list[str]) -> list[int]:
    """Dense rank codes of the composite (rank_key, secondary) key, larger = better."""
    keys = {e.doc_id: (e.rank_key, e.secondary_key) for e in result.entries}
    distinct = sorted(set(keys.values()))
    code = {k: i for i, k in enumerate(distinct)}
    return [code[keys[d]] for d in ids]


def _corr(value: float) -> Optional[float]:
    if value is None or math.isnan(value):
        return None
    return round(float(value), PRECISION)


def rank_correlations(a: RankedResult, b: RankedResult) -> tuple[Optional[float], Optional[float]]:
    ids = sorted(a.order)
    if set(ids) != set(b.order):
        raise MismatchedCorpora(f"{a.calculus} and {b.calculus} ranked different documents")
    if len(ids) < 2:
        return None, None
    x, y = _key_codes(a, ids), _key_codes(b, ids)
    if len(set(x)) < 2 or len(set(y)) < 2:
        return None, None
    rho = stats.spearmanr(x, y)[0]
    tau = stats.kendalltau(x, y)[0]
    return _corr(rho), _corr(tau)


def jaccard(a: RankedResult, b: RankedResult) -> float:
    ra, rb = set(a.retrieved), set(b.retrieved)
    union = ra | rb
    if not union:
        return 1.0
    return round(len(ra & rb) / len(union), PRECISION)


def ratio(num: int, den: int) -> Fraction | None:
    return Fraction(num, den) if den else None


def render_ratio(value: Fraction | None) -> float | str:
    return UNDEFINED if value is None else round(float(value), PRECISION)


def precision_recall(result: RankedResult, judgments: Judgments) -> tuple[Fraction | None, Fraction | None]:
    retrieved = set(result.retrieved)
    relevant = set(judgments.relevant)
    hits = len(retrieved & relevant)
    return ratio(hits, len(retrieved)), ratio(hits, len(relevant))


def mean_width(result: RankedResult) -> Optional[float]:
    widths = [e.value.width for e in result.entries if isinstance(e.value, Interval)]
    if not widths:
        return None
    return round(sum(widths) / len(widths), PRECISION)


def metrics(a: RankedResult, b: RankedResult, judgments: Judgments | None = None) -> dict[str, Any]:
    rho, tau = rank_correlations(a, b)
    report: dict[str, Any] = {"spearman": rho, "kendall": tau, "jaccard": jaccard(a, b)}
    if judgments is not None:
        report["precision"] = {}
        report["recall"] = {}
        for r in (a, b):
            p, rc = precision_recall(r, judgments)
            report["precision"][r.calculus] = render_ratio(p)
            report["recall"][r.calculus] = render_ratio(rc)
    return report


def compare_report(
    results: dict[str, RankedResult],
    judgments: Judgments | None = None,
    terms: TermDictionary | None = None,
    failures: dict[str, str] | None = None,
) -> dict[str, Any]:
    """Pairwise metrics over every pair of results plus per-calculus summaries."""
    names = list(results)
    pairs = []
    errors = dict(failures or {})
    for x, y in combinations(names, 2):
        try:
            entry = {"a": x, "b": y, **metrics(results[x], results[y])}
        except MismatchedCorpora as e:
            errors[f"{x} vs {y}"] = str(e)
            logger.warning("Pair %s / %s skipped: %s", x, y, e)
            continue
        pairs.append(entry)

    per_calculus: dict[str, Any] = {}
    for name, result in results.items():
        summary: dict[str, Any] = {
            "threshold": result.threshold,
            "retrieved": len(result.retrieved),
            "documents": len(result.entries),
            "mean_width": mean_width(result),
            "top": result.order[:3],
        }
        if judgments is not None:
            p, rc = precision_recall(result, judgments)
            summary["precision"] = render_ratio(p)
            summary["recall"] = render_ratio(rc)
        if terms is not None and result.entries and isinstance(result.entries[0].value, Fuzzy):
            summary["labels"] = {e.doc_id: terms.approximate(e.value)[0] for e in result.entries}
        if result.warnings:
            summary["warnings"] = dict(result.warnings)
        per_calculus[name] = summary

    report: dict[str, Any] = {"calculi": names, "pairs": pairs, "summary": per_calculus}
    if judgments is not None:
        report["precision"] = {n: s["precision"] for n, s in per_calculus.items()}
        report["recall"] = {n: s["recall"] for n, s in per_calculus.items()}
    if errors:
        report["failures"] = errors
    return report


class MetricsProcessor(BaseProcessor):
    def process(self, context: dict) -> None:
        results = context.get("results") or {}
        report = compare_report(results, context.get("judgments"), context.get("terms"), context.get("failures"))
        context["report"] = report
        logger.info("Metrics: %d calculi, %d pairs compared", len(results), len(report["pairs"]))
