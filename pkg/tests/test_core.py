import dataclasses
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aivi import (
    UNIT_BOUNDS,
    ClampPolicy,
    MissingPolicy,
    NormalizationBounds,
    WeightVector,
    aggregate_index,
    compute_index,
    decompose,
    normalize,
    potential_sub_index,
    validate_weights,
    vulnerability_from_potential,
)
from aivi.errors import (
    DegenerateBoundsError,
    EmptyWeightsError,
    IdMismatchError,
    MissingComponentError,
    NegativeWeightError,
    NonFiniteError,
    OutOfRangeError,
    UnitIntervalError,
    WeightSumError,
)
from support import dyadic_weights, random_structure, set_normalized


class TestNormalize:
    def test_interior_point(self):
        value, warning = normalize(5.0, NormalizationBounds(0.0, 10.0))
        assert value == 0.5
        assert warning is None

    def test_endpoints_map_exactly(self):
        bounds = NormalizationBounds(0.1, 0.30000000000000004)
        assert normalize(bounds.min, bounds) == (0.0, None)
        assert normalize(bounds.max, bounds) == (1.0, None)

    def test_clamp_low_and_high(self):
        bounds = NormalizationBounds(0.0, 1.0)
        low, warn_low = normalize(-0.5, bounds)
        high, warn_high = normalize(1.5, bounds)
        assert (low, high) == (0.0, 1.0)
        assert warn_low.code == warn_high.code == "clamp"
        assert warn_high.detail["raw"] == 1.5
        assert warn_high.detail["clamped_to"] == 1.0

    def test_error_policy_rejects(self):
        with pytest.raises(OutOfRangeError):
            normalize(1.5, UNIT_BOUNDS, ClampPolicy.ERROR)

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteError):
            normalize(float("nan"), UNIT_BOUNDS)

    def test_degenerate_bounds_rejected(self):
        with pytest.raises(DegenerateBoundsError):
            NormalizationBounds(1.0, 1.0)
        with pytest.raises(DegenerateBoundsError):
            NormalizationBounds(2.0, 1.0)

    @given(st.floats(min_value=-1e6, max_value=1e6))
    def test_output_always_unit_interval(self, x):
        value, _ = normalize(x, NormalizationBounds(-10.0, 10.0))
        assert 0.0 <= value <= 1.0

    @given(
        st.floats(min_value=-100.0, max_value=100.0),
        st.floats(min_value=-100.0, max_value=100.0),
    )
    def test_within_bounds_is_exact_formula(self, a, b):
        lo, hi = min(a, b), max(a, b)
        if hi - lo < 1e-6:
            return
        bounds = NormalizationBounds(lo, hi)
        mid = lo + (hi - lo) * 0.25
        value, warning = normalize(mid, bounds)
        assert warning is None
        assert value == pytest.approx((mid - lo) / (hi - lo), abs=1e-15)


class TestValidateWeights:
    def test_accepts_bare_floats(self):
        wv = validate_weights([0.5, 0.25, 0.25])
        assert wv.ids == ("w0", "w1", "w2")
        assert wv.weights == (0.5, 0.25, 0.25)

    def test_accepts_pairs_and_mapping(self):
        pairs = validate_weights([("a", 0.5), ("b", 0.5)])
        mapping = validate_weights({"a": 0.5, "b": 0.5})
        assert pairs.as_dict() == mapping.as_dict() == {"a": 0.5, "b": 0.5}

    def test_empty_rejected(self):
        with pytest.raises(EmptyWeightsError):
            validate_weights([])

    def test_negative_rejected(self):
        with pytest.raises(NegativeWeightError):
            validate_weights([1.5, -0.5])

    def test_zero_weight_allowed(self):
        wv = validate_weights([1.0, 0.0])
        assert wv["w1"] == 0.0

    def test_sum_violation_rejected_not_renormalized(self):
        with pytest.raises(WeightSumError):
            validate_weights([0.5, 0.6])
        with pytest.raises(WeightSumError):
            validate_weights([0.5, 0.5 - 2e-9])

    def test_sum_slack_within_tolerance(self):
        wv = validate_weights([0.5, 0.5 + 9e-10])
        # stored verbatim, never adjusted
        assert wv.weights[1] == 0.5 + 9e-10

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteError):
            validate_weights([math.inf, 0.0])

    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2**31))
    def test_dyadic_vectors_always_validate(self, count, seed):
        rng = random.Random(seed)
        wv = validate_weights(dyadic_weights(rng, count))
        assert math.fsum(wv.weights) == 1.0


class TestPotential:
    def test_all_zero_gives_full_potential(self):
        assert potential_sub_index([0.0, 0.0, 0.0], [0.5, 0.25, 0.25]) == 1.0

    def test_all_one_gives_zero_potential(self):
        assert potential_sub_index([1.0, 1.0], [0.5, 0.5]) == 0.0

    def test_weighted_average_hand_value(self):
        # 1 - (0.5*0.4 + 0.5*0.2) = 0.7
        assert potential_sub_index([0.4, 0.2], [0.5, 0.5]) == pytest.approx(0.7, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(IdMismatchError):
            potential_sub_index([0.5], validate_weights([0.5, 0.5]))

    def test_out_of_unit_rejected(self):
        with pytest.raises(UnitIntervalError):
            potential_sub_index([1.5], [1.0])

    def test_vulnerability_complement(self):
        assert vulnerability_from_potential(0.25) == 0.75
        with pytest.raises(UnitIntervalError):
            vulnerability_from_potential(1.25)


class TestAggregateIndex:
    def test_equal_potentials_identity(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(2, 6)
            weights = validate_weights(dyadic_weights(rng, n))
            for p in [i / 10 for i in range(11)]:
                pots = [(wid, p) for wid in weights.ids]
                assert abs(aggregate_index(pots, weights) - (1.0 - p)) <= 1e-12

    def test_zero_potential_forces_one_exactly(self):
        weights = validate_weights([("a", 0.5), ("b", 0.5)])
        assert aggregate_index([("a", 0.0), ("b", 0.9)], weights) == 1.0

    def test_zero_weight_zero_potential_skipped(self):
        # pot ** 0 == 1 by convention, so the zero potential is inert
        weights = validate_weights([("a", 1.0), ("b", 0.0)])
        value = aggregate_index([("a", 0.5), ("b", 0.0)], weights)
        assert value == pytest.approx(0.5, abs=1e-15)

    def test_mapping_input(self):
        weights = validate_weights({"x": 0.5, "y": 0.5})
        assert aggregate_index({"x": 0.25, "y": 0.25}, weights) == pytest.approx(0.75, abs=1e-12)

    def test_id_mismatch(self):
        weights = validate_weights([("a", 1.0)])
        with pytest.raises(IdMismatchError):
            aggregate_index([("b", 0.5)], weights)

    def test_result_in_unit_interval(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 6)
            weights = validate_weights(dyadic_weights(rng, n))
            pots = [(wid, rng.random()) for wid in weights.ids]
            assert 0.0 <= aggregate_index(pots, weights) <= 1.0


class TestDecompose:
    def test_contributions_recover_index(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(2, 6)
            weights = validate_weights(dyadic_weights(rng, n))
            pots = [(wid, 0.05 + 0.9 * rng.random()) for wid in weights.ids]
            aivi = aggregate_index(pots, weights)
            total = math.fsum(c for _, c in decompose(pots, weights))
            assert abs(math.exp(-total) - (1.0 - aivi)) <= 1e-12

    def test_zero_potential_contributes_infinity(self):
        weights = validate_weights([("a", 0.5), ("b", 0.5)])
        contributions = dict(decompose([("a", 0.0), ("b", 0.5)], weights))
        assert contributions["a"] == math.inf
        assert math.isfinite(contributions["b"])

    def test_zero_weight_contributes_zero(self):
        weights = validate_weights([("a", 1.0), ("b", 0.0)])
        contributions = dict(decompose([("a", 0.5), ("b", 0.0)], weights))
        assert contributions["b"] == 0.0


class TestComputeIndex:
    def test_matches_structure_arithmetic(self):
        rng = random.Random(17)
        model, values = random_structure(rng)
        result = compute_index(model, values, "2025")
        for sub in result.sub_indexes:
            expected = potential_sub_index(
                [cv.normalized for cv in sub.components], sub.component_weights
            )
            assert sub.potential == expected
        assert result.aivi == aggregate_index(
            [(s.id, s.potential) for s in result.sub_indexes], model.top_weights
        )

    def test_all_zero_normalized_gives_zero_index(self):
        rng = random.Random(19)
        model, values = random_structure(rng)
        zeroed = values
        for cid in values:
            zeroed = set_normalized(zeroed, cid, 0.0)
        result = compute_index(model, zeroed, "2025")
        assert result.aivi == 0.0
        assert result.warnings == ()

    def test_missing_component_error_lists_all(self, model, resolved):
        values = dict(resolved.values["2025"])
        del values["hhi_fab"]
        del values["gr_co2"]
        with pytest.raises(MissingComponentError) as excinfo:
            compute_index(model, values, "2025")
        assert excinfo.value.missing == ["hhi_fab", "gr_co2"]
        assert excinfo.value.to_dict()["missing"] == ["hhi_fab", "gr_co2"]

    def test_renormalize_warn_drops_component(self, model, resolved):
        lenient = dataclasses.replace(model, missing_policy=MissingPolicy.RENORMALIZE_WARN)
        values = dict(resolved.values["2025"])
        del values["hhi_fab"]
        result = compute_index(lenient, values, "2025")
        codes = [w.code for w in result.warnings]
        assert "weights_renormalized" in codes
        compute_sub = next(s for s in result.sub_indexes if s.id == "compute")
        assert len(compute_sub.components) == 3
        assert math.fsum(compute_sub.component_weights.weights) == pytest.approx(1.0, abs=1e-9)

    def test_renormalize_warn_drops_whole_sub_index(self, model, resolved):
        lenient = dataclasses.replace(model, missing_policy=MissingPolicy.RENORMALIZE_WARN)
        values = {
            cid: cv
            for cid, cv in resolved.values["2025"].items()
            if cid not in ("s_data", "lv_data")
        }
        result = compute_index(lenient, values, "2025")
        assert [s.id for s in result.sub_indexes] == ["compute", "talent", "capital", "energy"]
        assert "sub_index_dropped" in [w.code for w in result.warnings]
        assert math.fsum(s.weight for s in result.sub_indexes) == pytest.approx(1.0, abs=1e-9)

    def test_renormalize_warn_with_nothing_left_raises(self, model):
        lenient = dataclasses.replace(model, missing_policy=MissingPolicy.RENORMALIZE_WARN)
        with pytest.raises(MissingComponentError):
            compute_index(lenient, {}, "2025")

    def test_component_warnings_propagate(self, resolved, model):
        result = compute_index(model, resolved.values["2025"], "2025")
        clamps = [w for w in result.warnings if w.code == "clamp"]
        assert [w.component_id for w in clamps] == ["gr_co2"]
