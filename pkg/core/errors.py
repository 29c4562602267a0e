"""
Exception hierarchy. Every error the engine raises on bad input derives from EngineError,
so the CLI can map them to exit codes in one place.
"""
from __future__ import annotations


class EngineError(Exception):
    """Base for all engine errors."""


# ===== Calculi =====

class CalculusError(EngineError):
    pass


class UnknownCalculus(CalculusError):
    def __init__(self, name: str):
        super().__init__(f"Unknown calculus: {name!r}")
        self.name = name


class DomainError(CalculusError):
    """Operand outside the domain of an operator (e.g. scalar > 1, interval with lo > hi)."""


class InconsistentEvidence(CalculusError):
    """The feasible set of a detachment is empty."""


class CoercionError(CalculusError):
    """A rule weight literal cannot be lifted into the calculus family."""


class UnsupportedValue(CalculusError):
    """The family has no element for the requested role (scalar has no 'unknown')."""


# ===== Linguistic terms =====

class LinguisticError(EngineError):
    pass


class NonConvexTerm(LinguisticError):
    pass


class MalformedBreakpoints(LinguisticError):
    pass


class EmptyCut(LinguisticError):
    pass


class EmptyDictionary(LinguisticError):
    pass


class TermsFileError(LinguisticError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ===== Rule language =====

class RuleLanguageError(EngineError):
    """Carries a source position (1-based line/col) when one is known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(self.render())

    def render(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


class UnterminatedString(RuleLanguageError):
    pass


class IllegalCharacter(RuleLanguageError):
    pass


class RuleSyntaxError(RuleLanguageError):
    def __init__(self, message: str, line: int, col: int, expected: frozenset[str] = frozenset()):
        self.expected = expected
        super().__init__(message, line, col)


class UndefinedConcept(RuleLanguageError):
    def __init__(self, concept: str, line: int | None = None, col: int | None = None):
        self.concept = concept
        super().__init__(f"undefined concept {concept!r}", line, col)


class CyclicRuleBase(RuleLanguageError):
    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("cyclic rule base: " + " -> ".join(self.path))


class DuplicateRuleName(RuleLanguageError):
    pass


class MalformedWeight(RuleLanguageError):
    pass


class MalformedEvidenceBody(RuleLanguageError):
    pass


class RuleValidationError(RuleLanguageError):
    """Aggregate of validation errors."""

    def __init__(self, errors: list[RuleLanguageError]):
        self.errors = list(errors)
        super().__init__("; ".join(e.render() for e in self.errors) or "invalid rule base")


# ===== Corpus / metrics =====

class CorpusError(EngineError):
    pass


class CorpusIoError(CorpusError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot read {path}: {reason}")
        self.path = path


class UnknownDocument(CorpusError):
    pass


class MismatchedCorpora(CorpusError):
    pass


class JudgmentsError(CorpusError):
    pass


# ===== Traces =====

class TraceError(EngineError):
    pass


class UnknownNode(TraceError):
    pass


class MalformedTrace(TraceError):
    pass


# ===== Configuration =====

class ConfigError(EngineError):
    """Invalid combination of options or settings; a usage error for the CLI."""
