"""Tests for timeline composition, gating, and calendar rounding."""

import dataclasses

import pytest

from avhorizon.errors import UnsupportedStageError, ValidationError
from avhorizon.timeline import (
    Gating,
    PROJECTABLE_STAGES,
    STAGE_DELTA_MULTIPLIERS,
    STAGE_FAILURE_THRESHOLDS_PER_HOUR,
    Stage,
    StageSpec,
    TimelineBreakdown,
    calendar_date,
    compose_total,
    split_crow,
)


class TestStage:
    def test_from_key(self):
        assert Stage.from_key("2") is Stage.REVENUE_SERVICE
        assert Stage.from_key("3") is Stage.BROAD_COMMERCIAL
        assert Stage.from_key("stage2") is Stage.REVENUE_SERVICE
        assert Stage.from_key("stage3") is Stage.BROAD_COMMERCIAL

    def test_from_key_rejects_unknown(self):
        with pytest.raises(ValidationError):
            Stage.from_key("4")

    def test_display_names(self):
        assert Stage.REVENUE_SERVICE.display_name == "Revenue Service (Stage 2)"
        assert Stage.BROAD_COMMERCIAL.display_name == "Broad Commercialization (Stage 3)"
        assert Stage.PILOT.display_name == "Pilot (Stage 1)"

    def test_threshold_ladder_strictly_decreasing(self):
        t = STAGE_FAILURE_THRESHOLDS_PER_HOUR
        assert t[Stage.PILOT] == 1e-7
        assert t[Stage.REVENUE_SERVICE] == 1e-8
        assert t[Stage.BROAD_COMMERCIAL] == 1e-9
        assert t[Stage.PILOT] > t[Stage.REVENUE_SERVICE] > t[Stage.BROAD_COMMERCIAL]

    def test_delta_multipliers(self):
        assert STAGE_DELTA_MULTIPLIERS[Stage.REVENUE_SERVICE] == 0.5
        assert STAGE_DELTA_MULTIPLIERS[Stage.BROAD_COMMERCIAL] == 1.0

    def test_projectable_stages(self):
        assert PROJECTABLE_STAGES == (Stage.REVENUE_SERVICE, Stage.BROAD_COMMERCIAL)

    def test_gating_labels(self):
        assert Gating.COMPUTE.value == "compute-gated"
        assert Gating.RELIABILITY.value == "reliability-gated"


class TestStageSpec:
    def test_for_stage_carries_threshold(self):
        spec = StageSpec.for_stage(Stage.BROAD_COMMERCIAL, prod_reg_years=5.0)
        assert spec.failure_threshold_per_hour == 1e-9
        assert spec.delta_multiplier == 1.0
        assert spec.prod_reg_years == 5.0

    def test_pilot_stage_unsupported(self):
        with pytest.raises(UnsupportedStageError):
            StageSpec.for_stage(Stage.PILOT, prod_reg_years=1.0)


class TestSplitCrow:
    def test_worked_split(self):
        partial, final = split_crow(10.0, 0.7)
        assert partial == 7.0
        assert final == 3.0

    def test_full_concurrency(self):
        assert split_crow(12.5, 1.0) == (12.5, 0.0)

    def test_fully_serial(self):
        assert split_crow(12.5, 0.0) == (0.0, 12.5)

    def test_parts_recompose_exactly(self):
        partial, final = split_crow(13.7, 0.37)
        assert partial + final == 13.7

    def test_f_out_of_range(self):
        with pytest.raises(ValidationError):
            split_crow(10.0, 1.5)
        with pytest.raises(ValidationError):
            split_crow(10.0, -0.1)


class TestComposeTotal:
    def test_worked_total(self):
        b = compose_total(15.0, 10.0, 0.7, 1.0, 4.0)
        assert b.t_total == 23.0
        assert b.gating is Gating.COMPUTE
        assert b.t_crow_partial == 7.0
        assert b.t_crow_final == pytest.approx(3.0, abs=1e-12)

    def test_all_zero(self):
        assert compose_total(0.0, 0.0, 0.3, 0.0, 0.0).t_total == 0.0

    def test_consumer_assembly(self):
        b = compose_total(35.0, 10.0, 0.7, 0.8438682460715464, 5.0)
        assert b.t_total == pytest.approx(43.84, abs=0.01)
        assert b.gating is Gating.COMPUTE

    def test_serial_reduction_f_zero(self):
        b = compose_total(6.0, 10.0, 0.0, 1.5, 2.0)
        assert b.t_total == 6.0 + 10.0 + 1.5 + 2.0
        assert b.gating is Gating.COMPUTE

    def test_max_overlap_reduction_f_one(self):
        b = compose_total(6.0, 10.0, 1.0, 0.0, 2.0)
        assert b.t_total == max(10.0, 6.0) + 2.0
        assert b.gating is Gating.RELIABILITY

    def test_gating_flag_follows_max(self):
        assert compose_total(8.0, 10.0, 0.7, 0.0, 0.0).gating is Gating.COMPUTE
        assert compose_total(7.0, 10.0, 0.7, 0.0, 0.0).gating is Gating.RELIABILITY
        # boundary: t_comp == partial counts as reliability-gated
        b = compose_total(7.0, 10.0, 0.7, 0.0, 0.0)
        assert b.t_comp == b.t_crow_partial

    def test_monotone_in_each_duration(self):
        ref = compose_total(5.0, 10.0, 0.7, 1.0, 2.0).t_total
        assert compose_total(6.0, 10.0, 0.7, 1.0, 2.0).t_total >= ref
        assert compose_total(5.0, 11.0, 0.7, 1.0, 2.0).t_total >= ref
        assert compose_total(5.0, 10.0, 0.7, 2.0, 2.0).t_total >= ref
        assert compose_total(5.0, 10.0, 0.7, 1.0, 3.0).t_total >= ref

    def test_nonincreasing_in_f(self):
        totals = [compose_total(15.0, 10.0, f, 1.0, 4.0).t_total
                  for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
        assert totals == sorted(totals, reverse=True)

    def test_negative_duration_rejected(self):
        with pytest.raises(ValidationError):
            compose_total(-1.0, 10.0, 0.7, 1.0, 4.0)
        with pytest.raises(ValidationError):
            compose_total(15.0, 10.0, 0.7, -1.0, 4.0)

    def test_custom_baseline_year(self):
        b = compose_total(0.0, 1.0, 0.0, 0.0, 0.0, baseline_year=2030)
        assert b.calendar_year == 2031


class TestBreakdownInvariants:
    def test_inconsistent_split_rejected(self):
        good = compose_total(15.0, 10.0, 0.7, 1.0, 4.0)
        with pytest.raises(ValidationError):
            dataclasses.replace(good, t_crow_partial=6.0)

    def test_inconsistent_total_rejected(self):
        good = compose_total(15.0, 10.0, 0.7, 1.0, 4.0)
        with pytest.raises(ValidationError):
            dataclasses.replace(good, t_total=24.0)

    def test_inconsistent_gating_rejected(self):
        good = compose_total(15.0, 10.0, 0.7, 1.0, 4.0)
        assert good.gating is Gating.COMPUTE
        with pytest.raises(ValidationError):
            dataclasses.replace(good, gating=Gating.RELIABILITY)


class TestCalendarDate:
    def test_rounds_half_up_not_to_even(self):
        # Banker's rounding would map 0.5 to 0; the calendar rule must not.
        assert calendar_date(2024, 0.5) == 2025
        assert calendar_date(2024, 1.5) == 2026
        assert calendar_date(2024, 2.5) == 2027

    def test_worked_values(self):
        assert calendar_date(2024, 43.84) == 2068
        assert calendar_date(2024, 0.0) == 2024
        assert calendar_date(2024, 228.94) == 2253

    def test_below_half_rounds_down(self):
        assert calendar_date(2024, 4.49) == 2028

    def test_negative_total_rejected(self):
        with pytest.raises(ValidationError):
            calendar_date(2024, -0.1)
