"""
Linguistic truth values: fuzzy sets over [0, 1] named by words ("likely", "very certain").

Primary terms are defined by piecewise-linear breakpoints; hedges generate the rest of
the vocabulary. Connectives are evaluated by alpha-cut decomposition: each cut of a convex
term is an interval, the base interval calculus combines the cuts level by level, and the
result is rebuilt as mu(x) = max{level : x in cut_level}.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from calculi.base import Calculus, CalculusId
from calculi.interval import IntervalPreset, interval_preset
from core.errors import (
    CoercionError,
    DomainError,
    EmptyCut,
    EmptyDictionary,
    MalformedBreakpoints,
    NonConvexTerm,
    TermsFileError,
    UnknownCalculus,
)
from models.truth import (
    GRID,
    GRID_SIZE,
    GRID_STEP,
    Fuzzy,
    Interval,
    LinguisticWeight,
    Scalar,
    WeightLiteral,
    centroid,
    is_convex,
)

logger = logging.getLogger("evret")

HEDGES = ("very", "more-or-less", "not")
HEDGE_WORDS = {"very": "very", "more-or-less": "more or less", "not": "not"}
MAX_HEDGE_DEPTH = 2

DEFAULT_LEVELS = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

# Grid points within this distance of a cut endpoint belong to the cut.
_CUT_TOL = GRID_STEP * 1e-6
_MU_TOL = 1e-12


@dataclass(frozen=True)
class CutLevels:
    levels: tuple[float, ...] = DEFAULT_LEVELS

    def __post_init__(self) -> None:
        if not self.levels:
            raise DomainError("cut levels must be nonempty")
        prev = 0.0
        for lam in self.levels:
            if not (prev < lam <= 1.0):
                raise DomainError(f"cut levels must be strictly increasing within (0, 1]: {self.levels}")
            prev = lam

    @classmethod
    def from_config(cls, config: dict) -> "CutLevels":
        raw = (config.get("engine") or {}).get("cut_levels")
        if not raw:
            return cls()
        return cls(tuple(float(x) for x in raw))


# ===== Term construction =====

def define_term(name: str, breakpoints: Sequence[tuple[float, float]]) -> Fuzzy:
    """Sample the piecewise-linear term through ``breakpoints`` on the grid."""
    if len(breakpoints) < 2:
        raise MalformedBreakpoints(f"term {name!r}: need at least two breakpoints")
    xs = [float(x) for x, _ in breakpoints]
    mus = [float(m) for _, m in breakpoints]
    if xs[0] != 0.0 or xs[-1] != 1.0:
        raise MalformedBreakpoints(f"term {name!r}: breakpoints must start at x=0 and end at x=1")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise MalformedBreakpoints(f"term {name!r}: x must be strictly increasing")
    if any(not 0.0 <= m <= 1.0 for m in mus):
        raise MalformedBreakpoints(f"term {name!r}: mu must lie in [0, 1]")
    term = Fuzzy.from_array(np.interp(GRID, xs, mus))
    if not is_convex(term.array):
        raise NonConvexTerm(f"term {name!r} is not convex")
    return term


def apply_hedge(hedge: str, term: Fuzzy) -> Fuzzy:
    """Pointwise hedge. The result may be non-convex (e.g. "not" of a peaked term)."""
    arr = term.array
    if hedge == "very":
        out = arr ** 2
    elif hedge == "more-or-less":
        out = np.sqrt(arr)
    elif hedge == "not":
        out = 1.0 - arr
    else:
        raise DomainError(f"unknown hedge {hedge!r}")
    return Fuzzy.from_array(out)


def singleton(x: float) -> Fuzzy:
    """Crisp point at the grid point nearest ``x``."""
    mu = np.zeros(GRID_SIZE)
    mu[int(round(min(1.0, max(0.0, x)) * (GRID_SIZE - 1)))] = 1.0
    return Fuzzy.from_array(mu)


def rectangle(lo: float, hi: float) -> Fuzzy:
    """Crisp interval: membership 1 on grid points inside [lo, hi]."""
    mask = (GRID >= lo - _CUT_TOL) & (GRID <= hi + _CUT_TOL)
    if not mask.any():
        return singleton((lo + hi) / 2.0)
    return Fuzzy.from_array(mask.astype(float))


def convex_hull(term: Fuzzy) -> Fuzzy:
    arr = term.array
    left = np.maximum.accumulate(arr)
    right = np.maximum.accumulate(arr[::-1])[::-1]
    return Fuzzy.from_array(np.minimum(left, right))


# ===== Alpha cuts =====

def alpha_cut(term: Fuzzy, level: float) -> Interval:
    """[min, max] of grid points with mu >= level."""
    if not 0.0 < level <= 1.0:
        raise DomainError(f"cut level {level} outside (0, 1]")
    idx = np.flatnonzero(term.array >= level - _MU_TOL)
    if idx.size == 0:
        raise EmptyCut(f"no membership reaches {level}")
    return Interval(float(GRID[idx[0]]), float(GRID[idx[-1]]))


def reconstruct(cuts: Iterable[tuple[float, Interval]]) -> Fuzzy:
    """mu(x) = max{level : x in cut}, 0 where no cut covers x."""
    mu = np.zeros(GRID_SIZE)
    for level, cut in cuts:
        mask = (GRID >= cut.lo - _CUT_TOL) & (GRID <= cut.hi + _CUT_TOL)
        mu[mask] = np.maximum(mu[mask], level)
    return Fuzzy.from_array(mu)


def eval_connective(
    op: str,
    base: IntervalPreset,
    operands: Sequence[Fuzzy],
    levels: CutLevels = CutLevels(),
    hull: bool = False,
) -> Fuzzy:
    """Apply an interval connective level by level and rebuild the fuzzy result."""
    if not operands:
        raise DomainError(f"{op} needs at least one operand")
    prepared = []
    for term in operands:
        if not is_convex(term.array):
            if not hull:
                raise NonConvexTerm(f"non-convex operand to {op}")
            term = convex_hull(term)
        prepared.append(term)

    fn = {
        "conjoin": base.conjoin,
        "disjoin": base.disjoin,
        "combine": base.combine,
        "detach": base.detach,
    }.get(op)
    if op == "negate":
        if len(prepared) != 1:
            raise DomainError("negate takes one operand")
    elif fn is None:
        raise DomainError(f"unknown operator {op!r}")
    elif op == "detach" and len(prepared) != 2:
        raise DomainError("detach takes a body and a weight")

    cuts: list[tuple[float, Interval]] = []
    for level in levels.levels:
        try:
            level_cuts = [alpha_cut(t, level) for t in prepared]
        except EmptyCut:
            continue
        if op == "negate":
            out = base.negate(level_cuts[0])
        else:
            out = level_cuts[0]
            for nxt in level_cuts[1:]:
                out = fn(out, nxt)
        cuts.append((level, out))
    return reconstruct(cuts)


# ===== Term dictionary =====

@dataclass(frozen=True)
class VocabularyEntry:
    name: str
    value: Fuzzy
    depth: int


@dataclass
class TermDictionary:
    """Primary terms plus every hedge chain of depth <= max_depth applied to them."""

    primaries: dict[str, Fuzzy] = field(default_factory=dict)
    max_depth: int = MAX_HEDGE_DEPTH

    def __post_init__(self) -> None:
        self._vocabulary: dict[str, VocabularyEntry] = {}
        for name in sorted(self.primaries):
            term = self.primaries[name]
            self._add(VocabularyEntry(name, term, 0))
            frontier = [(name, term)]
            for depth in range(1, self.max_depth + 1):
                nxt = []
                for label, value in frontier:
                    for hedge in HEDGES:
                        hedged_label = f"{HEDGE_WORDS[hedge]} {label}"
                        hedged = apply_hedge(hedge, value)
                        self._add(VocabularyEntry(hedged_label, hedged, depth))
                        nxt.append((hedged_label, hedged))
                frontier = nxt

    def _add(self, entry: VocabularyEntry) -> None:
        known = self._vocabulary.get(entry.name)
        if known is None or entry.depth < known.depth:
            self._vocabulary[entry.name] = entry

    @property
    def vocabulary(self) -> dict[str, VocabularyEntry]:
        return dict(self._vocabulary)

    def __contains__(self, name: str) -> bool:
        return _normalize(name) in self._vocabulary

    def resolve(self, name: str) -> Fuzzy:
        entry = self._vocabulary.get(_normalize(name))
        if entry is None:
            raise CoercionError(f"unknown linguistic term {name!r}")
        return entry.value

    def centroid_of(self, name: str) -> float:
        return centroid(self.resolve(name))

    def crossover_cut_of(self, name: str) -> Interval:
        """Interval reading of a term: its 0.5 alpha-cut."""
        try:
            return alpha_cut(self.resolve(name), 0.5)
        except EmptyCut:
            raise CoercionError(f"term {name!r} never reaches membership 0.5") from None

    def approximate(self, result: Fuzzy) -> tuple[str, float]:
        return approximate(result, self)


def _normalize(name: str) -> str:
    return " ".join(name.replace("more-or-less", "more or less").split())


def approximate(result: Fuzzy, dictionary: TermDictionary) -> tuple[str, float]:
    """Nearest vocabulary entry by mean absolute difference on the grid.

    Ties go to the shorter hedge chain, then to the lexicographically smaller name.
    """
    vocab = dictionary.vocabulary
    if not vocab:
        raise EmptyDictionary("no linguistic terms defined")
    arr = result.array
    best = None
    for entry in vocab.values():
        d = float(np.abs(arr - entry.value.array).sum() / GRID_SIZE)
        key = (round(d, 12), entry.depth, entry.name)
        if best is None or key < best[0]:
            best = (key, entry.name, d)
    return best[1], best[2]


# ===== Terms file =====

_TERM_LINE = re.compile(r"^term\s+(?P<name>[^:]+?)\s*:\s*(?P<points>.*)$")
_POINT = re.compile(r"\(\s*([0-9]*\.?[0-9]+)\s*,\s*([0-9]*\.?[0-9]+)\s*\)")


def parse_terms(text: str) -> TermDictionary:
    """Parse ``term <name> : (x,mu) (x,mu) ...`` declarations, one per line; ``#`` starts a comment."""
    primaries: dict[str, Fuzzy] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _TERM_LINE.match(line)
        if not m:
            raise TermsFileError("expected 'term <name> : (x,mu) ...'", lineno)
        name = _normalize(m.group("name"))
        points_text = m.group("points")
        points = [(float(x), float(mu)) for x, mu in _POINT.findall(points_text)]
        if _POINT.sub("", points_text).strip():
            raise TermsFileError(f"unparseable breakpoints for {name!r}", lineno)
        if name in primaries:
            raise TermsFileError(f"duplicate term {name!r}", lineno)
        try:
            primaries[name] = define_term(name, points)
        except (MalformedBreakpoints, NonConvexTerm) as e:
            raise TermsFileError(str(e), lineno) from e
    logger.debug("Terms: %d primary terms parsed", len(primaries))
    return TermDictionary(primaries)


# ===== Calculus =====

TOP = singleton(1.0)
BOTTOM = singleton(0.0)
UNKNOWN = Fuzzy.from_array(np.ones(GRID_SIZE))


class LinguisticCalculus(Calculus):
    value_family = "fuzzy"
    # Rebuilt results can lose high levels, so a centroid of 1 is not absorbing.
    saturating_disjoin = False

    def __init__(self, calculus_id: CalculusId, levels: CutLevels = CutLevels(), hull: bool = False):
        super().__init__(calculus_id)
        if calculus_id.family != "linguistic" or calculus_id.base is None:
            raise UnknownCalculus(str(calculus_id))
        self.base = interval_preset(calculus_id.base)
        self.levels = levels
        self.hull = hull

    def _eval(self, op: str, *operands: Fuzzy) -> Fuzzy:
        return eval_connective(op, self.base, operands, self.levels, self.hull)

    def conjoin(self, a: Fuzzy, b: Fuzzy) -> Fuzzy:
        return self._eval("conjoin", a, b)

    def disjoin(self, a: Fuzzy, b: Fuzzy) -> Fuzzy:
        return self._eval("disjoin", a, b)

    def negate(self, a: Fuzzy) -> Fuzzy:
        return self._eval("negate", a)

    def detach(self, body: Fuzzy, weight: Fuzzy) -> Fuzzy:
        return self._eval("detach", body, weight)

    def combine(self, a: Fuzzy, b: Fuzzy) -> Fuzzy:
        return self._eval("combine", a, b)

    @property
    def top(self) -> Fuzzy:
        return TOP

    @property
    def bottom(self) -> Fuzzy:
        return BOTTOM

    @property
    def unknown(self) -> Fuzzy:
        return UNKNOWN

    def conj_upper_bound(self, partial: Fuzzy) -> float:
        # centroids are not monotone under cut-wise conjunction; never prune
        return 1.0

    @property
    def op_names(self) -> dict[str, str]:
        v = self.base.variant
        return {op: f"cuts({v}-{op})" for op in ("conjoin", "disjoin", "negate", "detach", "combine")}

    def coerce_weight(
        self,
        weight: WeightLiteral,
        terms: "TermDictionary | None" = None,
        defuzzify: bool = False,
    ) -> Fuzzy:
        if isinstance(weight, Scalar):
            return singleton(weight.v)
        if isinstance(weight, Interval):
            return rectangle(weight.lo, weight.hi)
        if isinstance(weight, LinguisticWeight):
            if terms is None:
                raise CoercionError(f"linguistic weight {weight.term!r} needs a terms file")
            return terms.resolve(weight.term)
        raise CoercionError(f"cannot coerce {weight!r} to a linguistic term")
