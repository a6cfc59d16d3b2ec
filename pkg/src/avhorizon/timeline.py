"""Deployment-stage timeline composition.

A category's time to a given deployment stage combines four spans:

* t_comp      years until compute capacity covers effective demand
* t_crow      years of reliability-growth mileage (Crow-AMSAA)
* t_poisson   years of final zero-failure demonstration mileage
* t_prod_reg  years of productization and regulatory clearance

A fraction f of the growth mileage can be accumulated on test fleets
while waiting for compute, so the total overlaps that part with the
compute horizon:

    t_total = max(f * t_crow, t_comp) + (1 - f) * t_crow
              + t_poisson + t_prod_reg

The schedule is compute-gated when t_comp exceeds the overlappable
growth span f * t_crow, reliability-gated otherwise.

Stages form a ladder: pilot, revenue service, broad commercialization.
The per-hour failure thresholds attached to the stages are descriptive
metadata for reporting only; demonstration math runs entirely on the
per-mile targets carried by the reliability parameters, and no
hour-to-mile conversion is ever applied.  Pilot timelines are not
projected (pilots are assumed achievable with current technology), so
projection is defined for the two commercial stages only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import UnsupportedStageError, ValidationError

__all__ = [
    "Stage",
    "Gating",
    "StageSpec",
    "TimelineBreakdown",
    "PROJECTABLE_STAGES",
    "STAGE_FAILURE_THRESHOLDS_PER_HOUR",
    "STAGE_DELTA_MULTIPLIERS",
    "split_crow",
    "compose_total",
    "calendar_date",
]


class Stage(enum.Enum):
    """Deployment stage ladder."""

    PILOT = "pilot"
    REVENUE_SERVICE = "stage2"
    BROAD_COMMERCIAL = "stage3"

    @property
    def display_name(self) -> str:
        return _STAGE_DISPLAY[self]

    @classmethod
    def from_key(cls, key: str) -> "Stage":
        """Parse a stage selector: 'stage2'/'stage3'/'pilot' or '1'/'2'/'3'."""
        normalized = str(key).strip().lower()
        aliases = {
            "1": cls.PILOT,
            "pilot": cls.PILOT,
            "2": cls.REVENUE_SERVICE,
            "stage2": cls.REVENUE_SERVICE,
            "3": cls.BROAD_COMMERCIAL,
            "stage3": cls.BROAD_COMMERCIAL,
        }
        if normalized not in aliases:
            raise ValidationError(
                f"unknown stage {key!r}; expected one of 1, 2, 3, pilot, stage2, stage3"
            )
        return aliases[normalized]


_STAGE_DISPLAY = {
    Stage.PILOT: "Pilot (Stage 1)",
    Stage.REVENUE_SERVICE: "Revenue Service (Stage 2)",
    Stage.BROAD_COMMERCIAL: "Broad Commercialization (Stage 3)",
}

# Reporting metadata only: the certification bar per stage, expressed as
# catastrophic failures per operating hour.  Never converted to per-mile.
STAGE_FAILURE_THRESHOLDS_PER_HOUR = {
    Stage.PILOT: 1e-7,
    Stage.REVENUE_SERVICE: 1e-8,
    Stage.BROAD_COMMERCIAL: 1e-9,
}

# Share of full-domain demonstration mileage each stage must cover.
STAGE_DELTA_MULTIPLIERS = {
    Stage.REVENUE_SERVICE: 0.5,
    Stage.BROAD_COMMERCIAL: 1.0,
}

PROJECTABLE_STAGES = (Stage.REVENUE_SERVICE, Stage.BROAD_COMMERCIAL)


def _check_threshold_ladder() -> None:
    ladder = [
        STAGE_FAILURE_THRESHOLDS_PER_HOUR[s]
        for s in (Stage.PILOT, Stage.REVENUE_SERVICE, Stage.BROAD_COMMERCIAL)
    ]
    for earlier, later in zip(ladder, ladder[1:]):
        if not later < earlier:
            raise ValidationError(
                f"stage failure thresholds must strictly decrease, got {ladder!r}"
            )


_check_threshold_ladder()


class Gating(enum.Enum):
    """Which constraint pins the start of the serial demonstration tail."""

    COMPUTE = "compute-gated"
    RELIABILITY = "reliability-gated"


@dataclass(frozen=True, slots=True)
class StageSpec:
    """Stage plus the scenario-dependent knobs the timeline needs."""

    stage: Stage
    failure_threshold_per_hour: float
    delta_multiplier: float
    prod_reg_years: float

    def __post_init__(self) -> None:
        if not isinstance(self.stage, Stage):
            raise ValidationError(f"stage must be a Stage, got {self.stage!r}")
        if not (math.isfinite(self.failure_threshold_per_hour) and self.failure_threshold_per_hour > 0):
            raise ValidationError(
                "failure_threshold_per_hour must be positive, "
                f"got {self.failure_threshold_per_hour!r}"
            )
        if not (math.isfinite(self.delta_multiplier) and 0.0 < self.delta_multiplier <= 1.0):
            raise ValidationError(
                f"delta_multiplier must lie in (0, 1], got {self.delta_multiplier!r}"
            )
        if not (math.isfinite(self.prod_reg_years) and self.prod_reg_years >= 0.0):
            raise ValidationError(
                f"prod_reg_years must be >= 0, got {self.prod_reg_years!r}"
            )

    @classmethod
    def for_stage(cls, stage: Stage, prod_reg_years: float) -> "StageSpec":
        """Standard spec for a projectable stage."""
        if stage not in STAGE_DELTA_MULTIPLIERS:
            raise UnsupportedStageError(
                f"no timeline is projected for {stage.display_name}; "
                "pilots are assumed achievable with current technology"
            )
        return cls(
            stage=stage,
            failure_threshold_per_hour=STAGE_FAILURE_THRESHOLDS_PER_HOUR[stage],
            delta_multiplier=STAGE_DELTA_MULTIPLIERS[stage],
            prod_reg_years=prod_reg_years,
        )


def split_crow(t_crow_total: float, f: float) -> tuple[float, float]:
    """Split growth years into an overlappable part and a serial tail.

    Returns (partial, final) with partial = f * t_crow_total and final
    the exact floating-point remainder, so partial + final always
    reconstructs t_crow_total bit for bit.
    """
    if not (math.isfinite(t_crow_total) and t_crow_total >= 0.0):
        raise ValidationError(f"t_crow_total must be >= 0, got {t_crow_total!r}")
    if not (math.isfinite(f) and 0.0 <= f <= 1.0):
        raise ValidationError(f"f must lie in [0, 1], got {f!r}")
    # Compute the larger share by multiplication and the smaller by
    # subtraction: the product then lies in [t/2, t], where Sterbenz's
    # lemma makes the subtraction exact, so the parts always sum back
    # to t_crow_total bit for bit (a plain t - f*t does not).
    if f >= 0.5:
        partial = f * t_crow_total
        final = t_crow_total - partial
    else:
        final = (1.0 - f) * t_crow_total
        partial = t_crow_total - final
    return partial, final


@dataclass(frozen=True, slots=True)
class TimelineBreakdown:
    """All spans of one projected timeline, plus the composed result.

    Constructed by compose_total; direct construction must satisfy the
    same identities (the split reconstructs t_crow_total exactly and
    t_total equals the composition formula term for term).
    """

    t_comp: float
    t_crow_total: float
    t_crow_partial: float
    t_crow_final: float
    t_poisson: float
    t_prod_reg: float
    f: float
    t_total: float
    gating: Gating
    calendar_year: int

    def __post_init__(self) -> None:
        for name in ("t_comp", "t_crow_total", "t_crow_partial", "t_crow_final",
                     "t_poisson", "t_prod_reg", "t_total"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0.0):
                raise ValidationError(f"{name} must be a finite value >= 0, got {v!r}")
        if not (math.isfinite(self.f) and 0.0 <= self.f <= 1.0):
            raise ValidationError(f"f must lie in [0, 1], got {self.f!r}")
        if self.t_crow_partial + self.t_crow_final != self.t_crow_total:
            raise ValidationError(
                "t_crow_partial + t_crow_final must reconstruct t_crow_total "
                f"exactly, got {self.t_crow_partial!r} + {self.t_crow_final!r} "
                f"!= {self.t_crow_total!r}"
            )
        recomposed = (
            max(self.t_crow_partial, self.t_comp)
            + self.t_crow_final + self.t_poisson + self.t_prod_reg
        )
        if recomposed != self.t_total:
            raise ValidationError(
                f"t_total must equal the composition formula, got {self.t_total!r} "
                f"vs recomposed {recomposed!r}"
            )
        expected_gating = Gating.COMPUTE if self.t_comp > self.t_crow_partial else Gating.RELIABILITY
        if self.gating is not expected_gating:
            raise ValidationError(
                f"gating must be {expected_gating.value!r} when t_comp={self.t_comp!r} "
                f"and t_crow_partial={self.t_crow_partial!r}"
            )
        if not isinstance(self.calendar_year, int) or isinstance(self.calendar_year, bool):
            raise ValidationError(
                f"calendar_year must be an integer, got {self.calendar_year!r}"
            )


def compose_total(
    t_comp: float,
    t_crow_total: float,
    f: float,
    t_poisson: float,
    t_prod_reg: float,
    baseline_year: int = 2024,
) -> TimelineBreakdown:
    """Compose the total timeline from its spans.

    The overlappable share f of growth mileage runs concurrently with
    the compute wait; whichever finishes later gates the serial tail of
    remaining growth, final demonstration and productization:

        t_total = max(f * t_crow, t_comp) + (1 - f) * t_crow
                  + t_poisson + t_prod_reg

    Setting f = 0 degenerates to the fully serial sum; f = 1 overlaps
    all growth mileage with the compute wait.
    """
    if not (math.isfinite(t_comp) and t_comp >= 0.0):
        raise ValidationError(f"t_comp must be >= 0, got {t_comp!r}")
    if not (math.isfinite(t_poisson) and t_poisson >= 0.0):
        raise ValidationError(f"t_poisson must be >= 0, got {t_poisson!r}")
    if not (math.isfinite(t_prod_reg) and t_prod_reg >= 0.0):
        raise ValidationError(f"t_prod_reg must be >= 0, got {t_prod_reg!r}")
    partial, final = split_crow(t_crow_total, f)
    t_total = max(partial, t_comp) + final + t_poisson + t_prod_reg
    gating = Gating.COMPUTE if t_comp > partial else Gating.RELIABILITY
    return TimelineBreakdown(
        t_comp=t_comp,
        t_crow_total=t_crow_total,
        t_crow_partial=partial,
        t_crow_final=final,
        t_poisson=t_poisson,
        t_prod_reg=t_prod_reg,
        f=f,
        t_total=t_total,
        gating=gating,
        calendar_year=calendar_date(baseline_year, t_total),
    )


def calendar_date(baseline_year: int, t_total_years: float) -> int:
    """Baseline year plus the total, rounded half up to a whole year.

    Half-up is deliberate: 0.5 always rounds forward, unlike bankers'
    rounding, so projected dates never round toward optimism on ties.
    """
    if not isinstance(baseline_year, int) or isinstance(baseline_year, bool):
        raise ValidationError(f"baseline_year must be an integer, got {baseline_year!r}")
    if not (math.isfinite(t_total_years) and t_total_years >= 0.0):
        raise ValidationError(f"t_total_years must be >= 0, got {t_total_years!r}")
    return baseline_year + math.floor(t_total_years + 0.5)
