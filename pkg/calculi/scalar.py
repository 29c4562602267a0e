"""
Scalar calculi over [0, 1]: three t-norm / t-conorm pairs, the standard negation,
four detachment operators and evidence combination.

Each detachment operator is the tightest lower bound on v[B] given v[A] and the truth of
the rule A => B under the matching implication:

    lukasiewicz   I(a, b) = min(1, 1 - a + b)      detach = max(0, a + w - 1)
    godel         I(a, b) = 1 if a <= b else b     detach = min(a, w)
    goguen        I(a, b) = 1 if a <= b else b / a detach = a * w
    kleene-dienes I(a, b) = max(1 - a, b)          detach = w if w > 1 - a else 0
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from calculi.base import Calculus, CalculusId
from core.errors import CoercionError, DomainError, UnknownCalculus, UnsupportedValue
from models.truth import Interval, LinguisticWeight, Scalar, WeightLiteral, snap

if TYPE_CHECKING:
    from calculi.linguistic import TermDictionary

TNORMS = ("min", "product", "lukasiewicz")
DETACHMENTS = ("lukasiewicz", "godel", "goguen", "kleene-dienes")
COMBINERS = ("prob-sum", "max")

# De Morgan dual of each t-norm under n(x) = 1 - x
DUAL_CONORM = {"min": "max", "product": "prob-sum", "lukasiewicz": "bounded-sum"}


def _unit(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{x!r} is outside [0, 1]")
    return x


def tnorm(name: str, a: float, b: float) -> float:
    _unit(a), _unit(b)
    if name == "min":
        return min(a, b)
    if name == "product":
        return a * b
    if name == "lukasiewicz":
        return max(0.0, a + b - 1.0)
    raise UnknownCalculus(f"tnorm {name}")


def prob_sum(a: float, b: float) -> float:
    # top is absorbing exactly; a + b - ab can miss 1.0 by an ulp
    if a >= 1.0 or b >= 1.0:
        return 1.0
    return a + b - a * b


def tconorm(name: str, a: float, b: float) -> float:
    _unit(a), _unit(b)
    if name == "max":
        return max(a, b)
    if name == "prob-sum":
        return prob_sum(a, b)
    if name == "bounded-sum":
        return min(1.0, a + b)
    raise UnknownCalculus(f"tconorm {name}")


def negate(a: float) -> float:
    return snap(1.0 - _unit(a))


def detach(variant: str, body: float, weight: float) -> float:
    _unit(body), _unit(weight)
    if variant == "lukasiewicz":
        return max(0.0, body + weight - 1.0)
    if variant == "godel":
        return min(body, weight)
    if variant == "goguen":
        return body * weight
    if variant == "kleene-dienes":
        return weight if weight > 1.0 - body else 0.0
    raise UnknownCalculus(f"detach {variant}")


def implication(variant: str, a: float, b: float) -> float:
    """The implication each detachment operator is sound for."""
    if variant == "lukasiewicz":
        return min(1.0, 1.0 - a + b)
    if variant == "godel":
        return 1.0 if a <= b else b
    if variant == "goguen":
        if a <= b:
            return 1.0
        return b / a
    if variant == "kleene-dienes":
        return max(1.0 - a, b)
    raise UnknownCalculus(f"implication {variant}")


def combine(name: str, a: float, b: float) -> float:
    _unit(a), _unit(b)
    if name == "prob-sum":
        return prob_sum(a, b)
    if name == "max":
        return max(a, b)
    raise UnknownCalculus(f"combine {name}")


@dataclass(frozen=True)
class ScalarPreset:
    tnorm: str
    detach: str
    combine: str = "prob-sum"

    def __post_init__(self) -> None:
        if self.tnorm not in TNORMS:
            raise UnknownCalculus(f"tnorm {self.tnorm}")
        if self.detach not in DETACHMENTS:
            raise UnknownCalculus(f"detach {self.detach}")
        if self.combine not in COMBINERS:
            raise UnknownCalculus(f"combine {self.combine}")

    @property
    def conorm(self) -> str:
        return DUAL_CONORM[self.tnorm]

    def conjoin(self, a: float, b: float) -> float:
        return tnorm(self.tnorm, a, b)

    def disjoin(self, a: float, b: float) -> float:
        return tconorm(self.conorm, a, b)

    def negate(self, a: float) -> float:
        return negate(a)

    def detach_value(self, body: float, weight: float) -> float:
        return detach(self.detach, body, weight)

    def combine_value(self, a: float, b: float) -> float:
        return combine(self.combine, a, b)


# The min/max preset detaches with times by default ("min, max, and times" bundle).
SCALAR_PRESETS: dict[str, ScalarPreset] = {
    "godel": ScalarPreset(tnorm="min", detach="goguen"),
    "product": ScalarPreset(tnorm="product", detach="goguen"),
    "lukasiewicz": ScalarPreset(tnorm="lukasiewicz", detach="lukasiewicz"),
}


def scalar_preset(calculus_id: CalculusId) -> ScalarPreset:
    base = SCALAR_PRESETS.get(calculus_id.preset)
    if calculus_id.family != "scalar" or base is None:
        raise UnknownCalculus(str(calculus_id))
    return ScalarPreset(
        tnorm=base.tnorm,
        detach=calculus_id.detach or base.detach,
        combine=calculus_id.combine or base.combine,
    )


class ScalarCalculus(Calculus):
    value_family = "scalar"

    def __init__(self, calculus_id: CalculusId):
        super().__init__(calculus_id)
        self.preset = scalar_preset(calculus_id)

    def conjoin(self, a: Scalar, b: Scalar) -> Scalar:
        return Scalar(self.preset.conjoin(a.v, b.v))

    def disjoin(self, a: Scalar, b: Scalar) -> Scalar:
        return Scalar(self.preset.disjoin(a.v, b.v))

    def negate(self, a: Scalar) -> Scalar:
        return Scalar(negate(a.v))

    def detach(self, body: Scalar, weight: Scalar) -> Scalar:
        return Scalar(self.preset.detach_value(body.v, weight.v))

    def combine(self, a: Scalar, b: Scalar) -> Scalar:
        return Scalar(self.preset.combine_value(a.v, b.v))

    @property
    def top(self) -> Scalar:
        return Scalar(1.0)

    @property
    def bottom(self) -> Scalar:
        return Scalar(0.0)

    @property
    def unknown(self) -> Scalar:
        raise UnsupportedValue("the scalar family has no 'unknown' element")

    @property
    def op_names(self) -> dict[str, str]:
        return {
            "conjoin": self.preset.tnorm,
            "disjoin": self.preset.conorm,
            "negate": "1-x",
            "detach": self.preset.detach,
            "combine": self.preset.combine,
        }

    def coerce_weight(
        self,
        weight: WeightLiteral,
        terms: "TermDictionary | None" = None,
        defuzzify: bool = False,
    ) -> Scalar:
        if isinstance(weight, Scalar):
            return weight
        if isinstance(weight, Interval):
            if not defuzzify:
                raise CoercionError(f"interval weight {weight} needs --defuzzify under {self.name}")
            return Scalar((weight.lo + weight.hi) / 2.0)
        if isinstance(weight, LinguisticWeight):
            if not defuzzify:
                raise CoercionError(f"linguistic weight {weight.term!r} needs --defuzzify under {self.name}")
            if terms is None:
                raise CoercionError(f"linguistic weight {weight.term!r} needs a terms file")
            return Scalar(terms.centroid_of(weight.term))
        raise CoercionError(f"cannot coerce {weight!r} to a scalar")
