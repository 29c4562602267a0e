"""Resolved settings for one CLI invocation: command-line flags layered over config.yaml."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Optional

from core.errors import ConfigError

ABSENT_POLICIES = ("closed", "unknown")


def _split(text: str | None) -> list[str]:
    return [s.strip() for s in (text or "").split(",") if s.strip()]


@dataclass
class RunConfig:
    command: str
    rules: Optional[str] = None
    corpus: Optional[str] = None
    goal: Optional[str] = None
    calculi: list[str] = field(default_factory=list)
    threshold: Optional[float] = None
    default_threshold: float = 0.0
    terms: Optional[str] = None
    absent: str = "closed"
    prune: bool = True
    defuzzify: bool = False
    echo_actions: bool = False
    overrides: dict[str, str] = field(default_factory=dict)
    explain_doc: Optional[str] = None
    output: Optional[str] = None
    trace_out: Optional[str] = None
    judgments: Optional[str] = None
    report: Optional[str] = None
    dot: Optional[str] = None
    print_rules: bool = False
    output_dir: str = "output"
    precision: int = 6

    @property
    def calculus(self) -> str:
        return self.calculi[0]

    def effective_threshold(self, rulebase_threshold: Optional[float]) -> float:
        """Command line first, then the rulebase directive, then config."""
        if self.threshold is not None:
            return self.threshold
        if rulebase_threshold is not None:
            return rulebase_threshold
        return self.default_threshold

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: dict[str, Any]) -> "RunConfig":
        engine = config.get("engine") or {}
        calculi_cfg = config.get("calculi") or {}
        output_cfg = config.get("output") or {}

        def flag(name: str, default: Any = None) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        command = args.command
        if command == "compare":
            if getattr(args, "family", None):
                from core.registry import presets

                calculi = presets(args.family)
            else:
                calculi = _split(flag("calculi")) or list(calculi_cfg.get("compare") or [])
        else:
            single = flag("calculus") or calculi_cfg.get("default")
            calculi = [single] if single else []

        run = cls(
            command=command,
            rules=flag("rules"),
            corpus=flag("corpus"),
            goal=flag("goal"),
            calculi=calculi,
            threshold=flag("threshold"),
            default_threshold=float(engine.get("threshold", 0.0) or 0.0),
            terms=flag("terms", engine.get("terms")),
            absent=flag("absent", engine.get("absent", "closed")),
            prune=not getattr(args, "no_prune", False) and bool(engine.get("prune", True)),
            defuzzify=bool(getattr(args, "defuzzify", False) or engine.get("defuzzify", False)),
            echo_actions=bool(engine.get("echo_actions", False)),
            overrides=dict(calculi_cfg.get("overrides") or {}),
            explain_doc=flag("explain"),
            output=flag("output"),
            trace_out=flag("trace_out"),
            judgments=flag("judgments"),
            report=flag("report"),
            dot=flag("dot"),
            print_rules=bool(getattr(args, "print", False)),
            output_dir=str(output_cfg.get("dir", "output")),
            precision=int(output_cfg.get("precision", 6)),
        )
        run.check()
        return run

    def check(self) -> None:
        if self.threshold is not None and not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold} outside [0, 1]")
        if not 0.0 <= self.default_threshold <= 1.0:
            raise ConfigError(f"engine.threshold {self.default_threshold} outside [0, 1]")
        if self.absent not in ABSENT_POLICIES:
            raise ConfigError(f"absent policy must be one of {', '.join(ABSENT_POLICIES)}")
        if self.command in ("compile", "query", "compare") and not self.goal:
            raise ConfigError("a goal concept is required (--goal)")
        if self.command in ("query", "compare") and not self.calculi:
            raise ConfigError("no calculus given (--calculus or calculi.default)")
        if self.command == "compare" and len(self.calculi) < 2:
            raise ConfigError("compare needs at least two calculi")
        if self.trace_out and not self.explain_doc:
            raise ConfigError("--trace-out needs --explain DOC")
        if self.command in ("query", "compare") and not self.terms:
            linguistic = [c for c in self.calculi if c.strip().startswith("linguistic")]
            if linguistic:
                raise ConfigError(f"{linguistic[0]} needs a terms file (--terms)")
