"""
compare output: summary tables on stdout (tabulate) and the full report as JSON.
"""
import logging
import sys

from tabulate import tabulate

from generator.base import BaseGenerator

logger = logging.getLogger("evret")


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def render_tables(report: dict) -> str:
    summary = report["summary"]
    has_judgments = "precision" in report
    headers = ["calculus", "retrieved", "mean width"]
    if has_judgments:
        headers += ["precision", "recall"]
    headers.append("top")
    rows = []
    for name in report["calculi"]:
        s = summary[name]
        row = [name, f"{s['retrieved']}/{s['documents']}", _cell(s["mean_width"])]
        if has_judgments:
            row += [_cell(s["precision"]), _cell(s["recall"])]
        row.append(", ".join(s["top"]))
        rows.append(row)
    out = tabulate(rows, headers=headers, tablefmt="github", disable_numparse=True) + "\n"

    if report["pairs"]:
        pair_rows = [
            [p["a"], p["b"], _cell(p["spearman"]), _cell(p["kendall"]), _cell(p["jaccard"])]
            for p in report["pairs"]
        ]
        out += "\n" + tabulate(
            pair_rows,
            headers=["a", "b", "spearman", "kendall", "jaccard"],
            tablefmt="github",
            disable_numparse=True,
        ) + "\n"

    for name, reason in (report.get("failures") or {}).items():
        out += f"\nFAILED {name}: {reason}"
    if report.get("failures"):
        out += "\n"
    return out


class ComparisonReportGenerator(BaseGenerator):
    def generate(self, context: dict) -> None:
        report = context["report"]
        sys.stdout.write(render_tables(report))
        target = self.run.report or "comparison.json"
        path = self.storage.write_json(target, report, self.run.precision)
        logger.info("Comparison report written to %s", path)
