"""
Entry point: parse the command line, load config, initialize the logger, build the
command's pipeline and run it. Exit codes: 0 success, 1 usage error, 2 input or
validation error, 3 comparison finished with failed calculi.
"""
import argparse
import logging
import os
import sys
from pathlib import Path

_root = Path(__file__).resolve().parent
sys.path.insert(0, str(_root))

try:
    from dotenv import load_dotenv
    load_dotenv(_root / ".env")
except ImportError:
    pass

from core.errors import ConfigError, EngineError
from core.explain import explain, render_text
from core.registry import PRESETS, build_pipeline, load_config
from models.run_config import ABSENT_POLICIES, RunConfig
from models.trace import EvaluationTrace
from storage.json_store import JSONStore
from utils.logger import setup_logger

logger = logging.getLogger("evret")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_PARTIAL = 3

GRAMMAR_HELP = """\
rule file grammar:
  threshold 0.3;
  name: Head <- implies|evidence weight W body [action "template"];
  W     := 0.8 | [0.6,0.9] | "very likely"
  body  := boolean expression over Concepts and "search strings"
           with not > and > or; evidence bodies are "s1" or "s2" ...

calculi:
""" + "\n".join(f"  {family}: {', '.join(names)}" for family, names in PRESETS.items()) + """
  scalar presets accept .detach=lukasiewicz|godel|goguen|kleene-dienes and .combine=prob-sum|max
"""


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--config", help="config file (default: $EVRET_CONFIG or config.yaml)")

    parser = CliParser(
        prog="evret",
        description="Evidential Retrieval Engine: rule-based document ranking under interchangeable uncertainty calculi",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    def command(name: str, help_text: str) -> CliParser:
        return sub.add_parser(
            name, help=help_text, parents=[common], epilog=GRAMMAR_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = command("compile", "validate a rulebase and expand the goal's inference graph")
    p.add_argument("--rules", required=True)
    p.add_argument("--goal", required=True)
    p.add_argument("--dot", help="write the graph in Graphviz DOT format")
    p.add_argument("--print", action="store_true", help="echo the normalized rulebase")
    p.add_argument("--calculus", help="calculus whose operator names label the DOT nodes")

    def evaluation_flags(p: CliParser) -> None:
        p.add_argument("--rules", required=True)
        p.add_argument("--corpus", required=True)
        p.add_argument("--goal", required=True)
        p.add_argument("--threshold", type=float)
        p.add_argument("--absent", choices=ABSENT_POLICIES)
        p.add_argument("--no-prune", action="store_true")
        p.add_argument("--terms", help="linguistic terms file")
        p.add_argument("--defuzzify", action="store_true",
                       help="allow linguistic or interval weights under calculi that cannot represent them")

    p = command("query", "rank a corpus under one calculus")
    evaluation_flags(p)
    p.add_argument("--calculus")
    p.add_argument("--explain", metavar="DOC", help="write DOC's trace and explain its root")
    p.add_argument("--output", help="write the ranking TSV here instead of stdout")
    p.add_argument("--trace-out", help="trace JSON path for --explain")

    p = command("compare", "rank a corpus under several calculi and compare the rankings")
    evaluation_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--calculi", help="comma-separated calculus ids")
    group.add_argument("--family", choices=sorted(PRESETS), help="every registered preset of one family")
    p.add_argument("--judgments", help="CSV with header doc_id,relevant")
    p.add_argument("--report", help="comparison report JSON path")

    p = command("explain", "explain a node of a saved trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--node", help="node id (default: the root)")
    p.add_argument("--terms", help="terms file for nearest-term labels")

    return parser


def _config_path(args: argparse.Namespace) -> Path:
    raw = getattr(args, "config", None) or os.environ.get("EVRET_CONFIG")
    return Path(raw) if raw else _root / "config.yaml"


def cmd_explain(args: argparse.Namespace) -> int:
    from calculi.linguistic import parse_terms

    store = JSONStore()
    trace = EvaluationTrace.from_dict(store.read_json(args.trace))
    terms = parse_terms(store.read_text(args.terms)) if args.terms else None
    sys.stdout.write(render_text(explain(trace, args.node, terms)))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    config_path = _config_path(args)
    if not config_path.exists():
        print(f"Config not found: {config_path}", file=sys.stderr)
        return EXIT_INPUT
    config = load_config(config_path)

    system = config.get("system") or {}
    setup_logger(level=system.get("log_level", "INFO"), log_file=system.get("log_file"))

    try:
        if args.command == "explain":
            return cmd_explain(args)
        run = RunConfig.from_args(args, config)
    except ConfigError as e:
        print(f"evret: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EngineError, OSError) as e:
        print(f"evret: error: {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        context = build_pipeline(config, run).run()
    except ConfigError as e:
        print(f"evret: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EngineError, OSError) as e:
        print(f"evret: error: {e}", file=sys.stderr)
        return EXIT_INPUT

    if run.command == "compare" and (context.get("report") or {}).get("failures"):
        return EXIT_PARTIAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
