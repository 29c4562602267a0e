"""Scalar calculi: t-norm axioms, duality, detachment soundness and tightness."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from calculi import scalar
from calculi.base import CalculusId
from calculi.scalar import DETACHMENTS, DUAL_CONORM, TNORMS, ScalarCalculus
from core.errors import CoercionError, DomainError, UnknownCalculus
from core.registry import lookup_calculus
from models.truth import Interval, LinguisticWeight, Scalar

_unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
_TOL = 1e-12

GRID = [i / 100 for i in range(101)]


class TestOperatorExamples:
    @pytest.mark.parametrize(
        "tnorm, a, b, expected",
        [("min", 0.3, 0.7, 0.3), ("product", 0.5, 0.5, 0.25), ("lukasiewicz", 0.3, 0.7, 0.0)],
    )
    def test_conjoin(self, tnorm, a, b, expected):
        assert scalar.tnorm(tnorm, a, b) == pytest.approx(expected, abs=_TOL)

    @pytest.mark.parametrize(
        "conorm, a, b, expected",
        [("max", 0.3, 0.7, 0.7), ("prob-sum", 0.5, 0.5, 0.75), ("bounded-sum", 0.3, 0.9, 1.0)],
    )
    def test_disjoin(self, conorm, a, b, expected):
        assert scalar.tconorm(conorm, a, b) == pytest.approx(expected, abs=_TOL)

    @pytest.mark.parametrize("a, expected", [(0.0, 1.0), (1.0, 0.0), (0.25, 0.75)])
    def test_negate(self, a, expected):
        assert scalar.negate(a) == expected

    def test_detach_examples(self):
        assert scalar.detach("goguen", 0.8, 0.9) == pytest.approx(0.72)
        assert scalar.detach("kleene-dienes", 0.3, 0.6) == 0.0
        for w in (0.0, 0.35, 0.9, 1.0):
            assert scalar.detach("lukasiewicz", 1.0, w) == pytest.approx(w, abs=_TOL)

    def test_combine_examples(self):
        assert scalar.combine("prob-sum", 0.5, 0.5) == 0.75
        assert scalar.combine("max", 0.4, 0.7) == 0.7
        for name in ("prob-sum", "max"):
            assert scalar.combine(name, 0.37, 0.0) == 0.37

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            scalar.tnorm("min", 1.2, 0.5)
        with pytest.raises(DomainError):
            scalar.detach("goguen", -0.1, 0.5)


class TestTnormAxioms:
    @pytest.mark.parametrize("name", TNORMS)
    @settings(max_examples=3500, deadline=None)
    @given(a=_unit, b=_unit, c=_unit)
    def test_axioms(self, name, a, b, c):
        t = lambda x, y: scalar.tnorm(name, x, y)  # noqa: E731
        assert t(a, b) == pytest.approx(t(b, a), abs=_TOL)
        assert t(t(a, b), c) == pytest.approx(t(a, t(b, c)), abs=_TOL)
        assert t(a, 1.0) == pytest.approx(a, abs=_TOL)
        lo, hi = min(b, c), max(b, c)
        assert t(a, lo) <= t(a, hi) + _TOL

    @pytest.mark.parametrize("name", TNORMS)
    @settings(max_examples=3500, deadline=None)
    @given(a=_unit, b=_unit)
    def test_de_morgan_duality(self, name, a, b):
        s = scalar.tconorm(DUAL_CONORM[name], a, b)
        assert s == pytest.approx(1.0 - scalar.tnorm(name, 1.0 - a, 1.0 - b), abs=_TOL)

    def test_pointwise_ordering_on_grid(self):
        for a in GRID:
            for b in GRID:
                luk = scalar.tnorm("lukasiewicz", a, b)
                prod = scalar.tnorm("product", a, b)
                mn = scalar.tnorm("min", a, b)
                assert luk <= prod + _TOL and prod <= mn + _TOL
                mx = scalar.tconorm("max", a, b)
                ps = scalar.tconorm("prob-sum", a, b)
                bs = scalar.tconorm("bounded-sum", a, b)
                assert mx <= ps + _TOL and ps <= bs + _TOL


class TestDetachment:
    @pytest.mark.parametrize("variant", DETACHMENTS)
    def test_sound_for_its_implication(self, variant):
        for a in GRID:
            for b in GRID:
                w = scalar.implication(variant, a, b)
                assert scalar.detach(variant, a, w) <= b + 1e-9

    @pytest.mark.parametrize("variant", DETACHMENTS)
    def test_tight_against_grid_oracle(self, variant):
        for a in GRID:
            for w in GRID:
                feasible = [b for b in GRID if scalar.implication(variant, a, b) >= w]
                if not feasible:
                    continue
                assert scalar.detach(variant, a, w) == pytest.approx(min(feasible), abs=0.01 + 1e-9)

    def test_goguen_implication_with_vacuous_antecedent(self):
        assert scalar.implication("goguen", 0.0, 0.0) == 1.0


class TestScalarCalculus:
    def test_godel_preset_bundles_min_max_times(self):
        calc = lookup_calculus("scalar.godel")
        assert calc.op_names["conjoin"] == "min"
        assert calc.op_names["disjoin"] == "max"
        assert calc.op_names["detach"] == "goguen"
        assert calc.conjoin(Scalar(0.3), Scalar(0.7)) == Scalar(0.3)

    def test_suffix_overrides(self):
        calc = lookup_calculus("scalar.product.detach=kleene-dienes.combine=max")
        assert calc.op_names["detach"] == "kleene-dienes"
        assert calc.op_names["combine"] == "max"
        assert calc.name == "scalar.product.detach=kleene-dienes.combine=max"

    @pytest.mark.parametrize("name", ["scalar.bogus", "scalar.godel.detach=bogus", "scalar", "fuzzy.min"])
    def test_unknown_names(self, name):
        with pytest.raises(UnknownCalculus):
            lookup_calculus(name)

    def test_apply_folds_left(self):
        calc = lookup_calculus("scalar.product")
        out = calc.apply("conjoin", [Scalar(0.5), Scalar(0.5), Scalar(0.5)])
        assert out.v == pytest.approx(0.125)

    def test_weight_coercion(self, terms):
        calc = ScalarCalculus(CalculusId.parse("scalar.godel"))
        assert calc.coerce_weight(Scalar(0.4)) == Scalar(0.4)
        with pytest.raises(CoercionError):
            calc.coerce_weight(Interval(0.6, 0.8))
        assert calc.coerce_weight(Interval(0.6, 0.8), defuzzify=True).v == pytest.approx(0.7)
        with pytest.raises(CoercionError):
            calc.coerce_weight(LinguisticWeight("likely"), terms)
        assert calc.coerce_weight(LinguisticWeight("likely"), terms, defuzzify=True).v == pytest.approx(0.8)
