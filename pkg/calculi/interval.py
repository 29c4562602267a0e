"""
Interval calculi over sub-intervals [lo, hi] of [0, 1].

frechet    probability bounds with no assumption about how events relate
           (Frechet-Hoeffding); the rule weight is P(not A or B)
support    support pairs combined under independence; the rule weight is the
           conditional support pair for B given A
extension  a scalar calculus applied endpoint-wise (all scalar operators are
           monotone, so the image of an interval is the interval of endpoint images)
mpmt       Lukasiewicz logic with modus ponens and modus tollens applied together;
           detachment reports InconsistentEvidence when no consequent value fits
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from calculi import scalar
from calculi.base import Calculus, CalculusId
from core.errors import CoercionError, DomainError, InconsistentEvidence, UnknownCalculus
from models.truth import Interval, LinguisticWeight, Scalar, WeightLiteral, snap

if TYPE_CHECKING:
    from calculi.linguistic import TermDictionary

VARIANTS = ("frechet", "support", "extension", "mpmt")
ABSENT_POLICIES = ("closed", "unknown")

BOTTOM = Interval(0.0, 0.0)
TOP = Interval(1.0, 1.0)
UNKNOWN = Interval(0.0, 1.0)

# Slack for float round-off in feasibility tests, e.g. 0.3 + 0.7 - 1.
_EPS = 1e-9


def _check(x: Interval) -> Interval:
    if not (0.0 <= x.lo <= x.hi <= 1.0):
        raise DomainError(f"{x!r} is not a valid interval")
    return x


def _iv(lo: float, hi: float) -> Interval:
    """Clamp to [0, 1]; a lower bound that overshoots the upper by round-off collapses onto it."""
    lo = min(1.0, max(0.0, lo))
    hi = min(1.0, max(0.0, hi))
    if lo > hi:
        if lo - hi > _EPS:
            raise DomainError(f"computed inverted interval [{lo}, {hi}]")
        lo = hi
    return Interval(lo, hi)


def negate(a: Interval) -> Interval:
    _check(a)
    return Interval(snap(1.0 - a.hi), snap(1.0 - a.lo))


# ----- frechet -----

def frechet_conjoin(a: Interval, b: Interval) -> Interval:
    return _iv(max(0.0, a.lo + b.lo - 1.0), min(a.hi, b.hi))


def frechet_disjoin(a: Interval, b: Interval) -> Interval:
    return _iv(max(a.lo, b.lo), min(1.0, a.hi + b.hi))


def frechet_detach(body: Interval, weight: Interval) -> Interval:
    # P(B) >= P(A) + P(not A or B) - 1 and P(B) <= P(not A or B)
    return _iv(max(0.0, body.lo + weight.lo - 1.0), weight.hi)


# ----- support -----

def support_conjoin(a: Interval, b: Interval) -> Interval:
    return _iv(a.lo * b.lo, a.hi * b.hi)


def support_disjoin(a: Interval, b: Interval) -> Interval:
    return _iv(scalar.prob_sum(a.lo, b.lo), scalar.prob_sum(a.hi, b.hi))


def support_detach(body: Interval, weight: Interval) -> Interval:
    # P(B) = P(B|A) P(A) + P(B|not A) (1 - P(A)) with P(B|not A) unconstrained
    # an absent body (lo 0) detaches to [0, 1]
    return _iv(body.lo * weight.lo, 1.0 - body.lo * (1.0 - weight.hi))


# ----- mpmt -----

def mpmt_conjoin(a: Interval, b: Interval) -> Interval:
    return _iv(max(0.0, a.lo + b.lo - 1.0), max(0.0, a.hi + b.hi - 1.0))


def mpmt_disjoin(a: Interval, b: Interval) -> Interval:
    return _iv(min(1.0, a.lo + b.lo), min(1.0, a.hi + b.hi))


def mpmt_detach(body: Interval, weight: Interval) -> Interval:
    """Values of b consistent with a in body and min(1, 1 - a + b) in weight.

    Modus tollens bounds b from above: when the rule is not fully true, b <= a + w_hi - 1,
    which is only satisfiable if hi(body) + hi(weight) >= 1.
    """
    lo = max(0.0, body.lo + weight.lo - 1.0)
    if weight.hi >= 1.0:
        hi = 1.0
    else:
        hi = body.hi + weight.hi - 1.0
        if hi < -_EPS:
            raise InconsistentEvidence(
                f"no consequent satisfies body {_fmt(body)} with rule weight {_fmt(weight)}"
            )
        hi = max(0.0, hi)
    return _iv(snap(lo), snap(hi))


def _fmt(x: Interval) -> str:
    return f"[{x.lo:g}, {x.hi:g}]"


@dataclass(frozen=True)
class IntervalPreset:
    variant: str
    scalar_base: Optional[scalar.ScalarPreset] = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise UnknownCalculus(f"interval.{self.variant}")
        if self.variant == "extension" and self.scalar_base is None:
            raise UnknownCalculus("interval.extension needs a scalar preset")

    def conjoin(self, a: Interval, b: Interval) -> Interval:
        _check(a), _check(b)
        if self.variant == "frechet":
            return frechet_conjoin(a, b)
        if self.variant == "support":
            return support_conjoin(a, b)
        if self.variant == "mpmt":
            return mpmt_conjoin(a, b)
        s = self.scalar_base
        return _iv(s.conjoin(a.lo, b.lo), s.conjoin(a.hi, b.hi))

    def disjoin(self, a: Interval, b: Interval) -> Interval:
        _check(a), _check(b)
        if self.variant == "frechet":
            return frechet_disjoin(a, b)
        if self.variant == "support":
            return support_disjoin(a, b)
        if self.variant == "mpmt":
            return mpmt_disjoin(a, b)
        s = self.scalar_base
        return _iv(s.disjoin(a.lo, b.lo), s.disjoin(a.hi, b.hi))

    def negate(self, a: Interval) -> Interval:
        return negate(a)

    def detach(self, body: Interval, weight: Interval) -> Interval:
        _check(body), _check(weight)
        if self.variant == "frechet":
            return frechet_detach(body, weight)
        if self.variant == "support":
            return support_detach(body, weight)
        if self.variant == "mpmt":
            return mpmt_detach(body, weight)
        s = self.scalar_base
        return _iv(s.detach_value(body.lo, weight.lo), s.detach_value(body.hi, weight.hi))

    def combine(self, a: Interval, b: Interval) -> Interval:
        return self.disjoin(a, b)


def interval_preset(calculus_id: CalculusId) -> IntervalPreset:
    if calculus_id.family != "interval" or calculus_id.preset not in VARIANTS:
        raise UnknownCalculus(str(calculus_id))
    if calculus_id.preset == "extension":
        if calculus_id.base is None or calculus_id.base.family != "scalar":
            raise UnknownCalculus(str(calculus_id))
        return IntervalPreset("extension", scalar.scalar_preset(calculus_id.base))
    return IntervalPreset(calculus_id.preset)


class IntervalCalculus(Calculus):
    value_family = "interval"

    def __init__(self, calculus_id: CalculusId):
        super().__init__(calculus_id)
        self.preset = interval_preset(calculus_id)

    def conjoin(self, a: Interval, b: Interval) -> Interval:
        return self.preset.conjoin(a, b)

    def disjoin(self, a: Interval, b: Interval) -> Interval:
        return self.preset.disjoin(a, b)

    def negate(self, a: Interval) -> Interval:
        return self.preset.negate(a)

    def detach(self, body: Interval, weight: Interval) -> Interval:
        return self.preset.detach(body, weight)

    def combine(self, a: Interval, b: Interval) -> Interval:
        return self.preset.combine(a, b)

    @property
    def top(self) -> Interval:
        return TOP

    @property
    def bottom(self) -> Interval:
        return BOTTOM

    @property
    def unknown(self) -> Interval:
        return UNKNOWN

    @property
    def op_names(self) -> dict[str, str]:
        v = self.preset.variant
        if v == "extension":
            base = self.preset.scalar_base
            return {
                "conjoin": f"ext({base.tnorm})",
                "disjoin": f"ext({base.conorm})",
                "negate": "[1-hi,1-lo]",
                "detach": f"ext({base.detach})",
                "combine": f"ext({base.conorm})",
            }
        return {
            "conjoin": f"{v}-and",
            "disjoin": f"{v}-or",
            "negate": "[1-hi,1-lo]",
            "detach": f"{v}-detach",
            "combine": f"{v}-or",
        }

    def coerce_weight(
        self,
        weight: WeightLiteral,
        terms: "TermDictionary | None" = None,
        defuzzify: bool = False,
    ) -> Interval:
        if isinstance(weight, Interval):
            return weight
        if isinstance(weight, Scalar):
            return Interval(weight.v, weight.v)
        if isinstance(weight, LinguisticWeight):
            if not defuzzify:
                raise CoercionError(f"linguistic weight {weight.term!r} needs --defuzzify under {self.name}")
            if terms is None:
                raise CoercionError(f"linguistic weight {weight.term!r} needs a terms file")
            return terms.crossover_cut_of(weight.term)
        raise CoercionError(f"cannot coerce {weight!r} to an interval")
