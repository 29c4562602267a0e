"""Interval calculi: examples, closure, refinement, degenerate reduction and brute-force oracles."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from calculi import interval
from calculi.base import CalculusId
from calculi.interval import IntervalCalculus, IntervalPreset, interval_preset
from calculi.scalar import SCALAR_PRESETS
from core.errors import CoercionError, InconsistentEvidence, UnknownCalculus
from core.registry import lookup_calculus
from models.truth import Interval, LinguisticWeight, Scalar, validate

_unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
_TOL = 1e-9


@st.composite
def intervals(draw):
    a, b = draw(_unit), draw(_unit)
    return Interval(min(a, b), max(a, b))


def preset(name: str) -> IntervalPreset:
    return interval_preset(CalculusId.parse(name))


FRECHET = preset("interval.frechet")
SUPPORT = preset("interval.support")
MPMT = preset("interval.mpmt")
ALL = [preset(n) for n in ("interval.frechet", "interval.support", "interval.extension:scalar.godel",
                           "interval.extension:scalar.product", "interval.extension:scalar.lukasiewicz",
                           "interval.mpmt")]


def approx_iv(x: Interval, lo: float, hi: float) -> None:
    assert x.lo == pytest.approx(lo, abs=_TOL)
    assert x.hi == pytest.approx(hi, abs=_TOL)


class TestExamples:
    def test_conjoin(self):
        approx_iv(FRECHET.conjoin(Interval(0.6, 0.9), Interval(0.5, 0.8)), 0.1, 0.8)
        approx_iv(SUPPORT.conjoin(Interval(0.6, 0.9), Interval(0.5, 0.8)), 0.30, 0.72)
        ext = preset("interval.extension:scalar.godel")
        assert ext.conjoin(Interval(0.4, 0.4), Interval(0.7, 0.7)) == Interval(0.4, 0.4)

    def test_disjoin(self):
        approx_iv(FRECHET.disjoin(Interval(0.6, 0.9), Interval(0.5, 0.8)), 0.6, 1.0)
        approx_iv(SUPPORT.disjoin(Interval(0.2, 0.4), Interval(0.3, 0.5)), 0.44, 0.70)

    @pytest.mark.parametrize("p", ALL, ids=lambda p: p.variant)
    def test_bottom_is_disjunction_identity(self, p):
        x = Interval(0.35, 0.6)
        approx_iv(p.disjoin(interval.BOTTOM, x), 0.35, 0.6)
        approx_iv(p.combine(interval.BOTTOM, x), 0.35, 0.6)

    def test_negate(self):
        approx_iv(interval.negate(Interval(0.2, 0.6)), 0.4, 0.8)
        assert interval.negate(Interval(0.0, 1.0)) == Interval(0.0, 1.0)
        assert interval.negate(Interval(1.0, 1.0)) == Interval(0.0, 0.0)

    def test_detach(self):
        approx_iv(SUPPORT.detach(Interval(0.8, 1.0), Interval(0.9, 1.0)), 0.72, 1.0)
        approx_iv(FRECHET.detach(Interval(1.0, 1.0), Interval(0.35, 0.8)), 0.35, 0.8)
        approx_iv(MPMT.detach(Interval(0.7, 0.9), Interval(0.8, 0.9)), 0.5, 0.8)

    def test_mpmt_reports_infeasible_evidence(self):
        with pytest.raises(InconsistentEvidence):
            MPMT.detach(Interval(0.0, 0.0), Interval(0.9, 0.9))

    def test_combine(self):
        approx_iv(FRECHET.combine(Interval(0.3, 0.5), Interval(0.4, 0.6)), 0.4, 1.0)
        approx_iv(SUPPORT.combine(Interval(0.5, 0.5), Interval(0.5, 0.5)), 0.75, 0.75)


class TestProperties:
    @pytest.mark.parametrize("p", ALL, ids=lambda p: p.variant)
    @settings(max_examples=2600, deadline=None)
    @given(a=intervals(), b=intervals())
    def test_closure(self, p, a, b):
        for out in (p.conjoin(a, b), p.disjoin(a, b), p.combine(a, b), p.negate(a)):
            assert validate(out) is None
        try:
            assert validate(p.detach(a, b)) is None
        except InconsistentEvidence:
            assert p.variant == "mpmt"

    @pytest.mark.parametrize("p", ALL, ids=lambda p: p.variant)
    def test_closure_on_boundary_endpoints(self, p):
        corners = [Interval(lo, hi) for lo, hi in ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0))]
        for a, b in itertools.product(corners, repeat=2):
            for out in (p.conjoin(a, b), p.disjoin(a, b), p.negate(a)):
                assert validate(out) is None
            try:
                assert validate(p.detach(a, b)) is None
            except InconsistentEvidence:
                assert p.variant == "mpmt"

    @settings(max_examples=10000, deadline=None)
    @given(a=intervals(), b=intervals())
    def test_support_refines_frechet(self, a, b):
        for op in ("conjoin", "disjoin"):
            s = getattr(SUPPORT, op)(a, b)
            f = getattr(FRECHET, op)(a, b)
            assert f.lo <= s.lo + _TOL
            assert s.hi <= f.hi + _TOL

    @settings(max_examples=500, deadline=None)
    @given(k=st.integers(min_value=0, max_value=10**6), m=st.integers(min_value=0, max_value=10**6))
    def test_negate_is_an_involution(self, k, m):
        lo, hi = sorted((k / 10**6, m / 10**6))
        x = Interval(lo, hi)
        assert interval.negate(interval.negate(x)) == x

    @pytest.mark.parametrize("scalar_name", sorted(SCALAR_PRESETS))
    def test_extension_reduces_to_scalar_on_points(self, scalar_name):
        ext = preset(f"interval.extension:scalar.{scalar_name}")
        base = SCALAR_PRESETS[scalar_name]
        grid = [i / 100 for i in range(0, 101, 5)] + [0.33, 0.67, 0.99]
        for v, w in itertools.product(grid, repeat=2):
            a, b = Interval(v, v), Interval(w, w)
            for op, fn in (
                ("conjoin", base.conjoin),
                ("disjoin", base.disjoin),
                ("detach", base.detach_value),
                ("combine", base.disjoin),
            ):
                r = fn(v, w)
                assert getattr(ext, op)(a, b) == Interval(r, r), (op, v, w)


def _frechet_oracle(a: Interval, b: Interval, steps: int = 20) -> tuple[Interval, Interval]:
    """Extremes of P(A and B) and P(A or B) over joint distributions on a 1/steps grid."""
    def units(x: Interval) -> range:
        return range(round(x.lo * steps), round(x.hi * steps) + 1)

    conj, disj = [], []
    for i in units(a):
        for j in units(b):
            for k in range(0, min(i, j) + 1):
                if i + j - k <= steps:
                    conj.append(k)
                    disj.append(i + j - k)
    return (Interval(min(conj) / steps, max(conj) / steps), Interval(min(disj) / steps, max(disj) / steps))


def _mpmt_oracle(body: Interval, weight: Interval, steps: int = 20) -> Interval | None:
    """[min b, max b] over grid pairs (a, b) with a in body and min(1, 1 - a + b) in weight."""
    a_lo, a_hi = round(body.lo * steps), round(body.hi * steps)
    w_lo, w_hi = round(weight.lo * steps), round(weight.hi * steps)
    feasible = [
        j
        for i in range(a_lo, a_hi + 1)
        for j in range(steps + 1)
        if w_lo <= min(steps, steps - i + j) <= w_hi
    ]
    if not feasible:
        return None
    return Interval(min(feasible) / steps, max(feasible) / steps)


_COARSE = [Interval(lo / 20, hi / 20) for lo in range(0, 21, 5) for hi in range(lo, 21, 5)]


class TestOracles:
    def test_frechet_matches_joint_distribution_enumeration(self):
        for a, b in itertools.product(_COARSE, repeat=2):
            conj, disj = _frechet_oracle(a, b)
            approx_iv(FRECHET.conjoin(a, b), conj.lo, conj.hi)
            approx_iv(FRECHET.disjoin(a, b), disj.lo, disj.hi)

    def test_mpmt_detach_matches_feasibility_oracle(self):
        grid = [Interval(lo / 20, hi / 20) for lo in range(0, 21, 2) for hi in range(lo, 21, 3)]
        for body, weight in itertools.product(grid, repeat=2):
            expected = _mpmt_oracle(body, weight)
            if expected is None:
                with pytest.raises(InconsistentEvidence):
                    MPMT.detach(body, weight)
                continue
            got = MPMT.detach(body, weight)
            approx_iv(got, expected.lo, expected.hi)


class TestIntervalCalculus:
    def test_lookup_and_names(self):
        calc = lookup_calculus("interval.extension:scalar.product")
        assert isinstance(calc, IntervalCalculus)
        assert calc.name == "interval.extension:scalar.product"
        assert calc.op_names["conjoin"] == "ext(product)"
        assert lookup_calculus("interval.extension(scalar.godel)").name == "interval.extension:scalar.godel"

    @pytest.mark.parametrize("name", ["interval.bogus", "interval.extension:interval.frechet", "interval.frechet.detach=godel"])
    def test_unknown(self, name):
        with pytest.raises(UnknownCalculus):
            lookup_calculus(name)

    def test_weight_coercion(self, terms):
        calc = lookup_calculus("interval.frechet")
        assert calc.coerce_weight(Scalar(0.8)) == Interval(0.8, 0.8)
        assert calc.coerce_weight(Interval(0.1, 0.3)) == Interval(0.1, 0.3)
        with pytest.raises(CoercionError):
            calc.coerce_weight(LinguisticWeight("likely"), terms)
        approx_iv(calc.coerce_weight(LinguisticWeight("likely"), terms, defuzzify=True), 0.7, 0.9)
        approx_iv(calc.coerce_weight(LinguisticWeight("very likely"), terms, defuzzify=True), 0.75, 0.85)
