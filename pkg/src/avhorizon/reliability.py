"""Reliability-growth mileage demonstration math.

Two demonstration regimes feed the timeline model:

* Crow-AMSAA growth.  While the system is still being improved, the
  instantaneous failure rate after t accumulated miles follows the
  power law lambda(t) = alpha * t**(-beta) * severity, with alpha the
  rate at one mile, beta in (0, 1) the learning exponent and severity
  a multiplier >= 1 for harder duty cycles.  Inverting the law gives
  the miles required to grow reliability down to a target rate:

      R = (alpha * severity / lambda_target) ** (1 / beta)

  If the target is already met at one mile (lambda_target >= alpha *
  severity) no growth mileage is required.

* Poisson zero-failure demonstration.  Once mature, the final rate is
  demonstrated statistically: surviving R miles with zero failures
  bounds the rate at lambda <= -ln(1 - C) / R at confidence C, so

      R = -ln(1 - C) * safety_factor / lambda_target

Both regimes yield miles; calendar conversion applies the operational
design domain (ODD) weighting gamma, the stage exposure fraction delta
and the fleet's annual mileage M:

      years = R * gamma * delta / M

Miles are the canonical demonstration unit throughout; years are
always derived, never stored upstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

__all__ = [
    "CrowAmsaaParams",
    "PoissonParams",
    "OddDimension",
    "OddProfile",
    "crow_required_miles",
    "crow_failure_rate",
    "poisson_required_miles",
    "gamma",
    "demonstration_years",
]

_WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class CrowAmsaaParams:
    """Power-law reliability growth curve parameters."""

    alpha: float  # failure rate per mile at one accumulated mile
    beta: float  # learning exponent; larger means faster improvement
    severity: float = 1.0  # mean harm per failure event, scales the effective rate

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= 1.0):
            raise ValidationError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not (math.isfinite(self.beta) and 0.0 < self.beta < 1.0):
            raise ValidationError(
                f"beta must lie strictly in (0, 1), got {self.beta!r}"
            )
        if not (math.isfinite(self.severity) and self.severity >= 1.0):
            raise ValidationError(f"severity must be >= 1, got {self.severity!r}")


@dataclass(frozen=True, slots=True)
class PoissonParams:
    """Zero-failure demonstration parameters."""

    confidence: float  # statistical confidence level, e.g. 0.95
    safety_factor: float  # margin multiplier on the demonstrated miles
    lambda_target: float  # target failure rate per mile

    def __post_init__(self) -> None:
        if not (math.isfinite(self.confidence) and 0.0 < self.confidence < 1.0):
            raise ValidationError(
                f"confidence must lie strictly in (0, 1), got {self.confidence!r}"
            )
        if not (math.isfinite(self.safety_factor) and self.safety_factor >= 1.0):
            raise ValidationError(
                f"safety_factor must be >= 1, got {self.safety_factor!r}"
            )
        if not (math.isfinite(self.lambda_target) and self.lambda_target > 0.0):
            raise ValidationError(
                f"lambda_target must be positive, got {self.lambda_target!r}"
            )


@dataclass(frozen=True, slots=True)
class OddDimension:
    """One operational condition with its mix weight and difficulty score."""

    name: str
    weight: float
    score: float

    def __post_init__(self) -> None:
        if not self.name or not isinstance(self.name, str):
            raise ValidationError(f"dimension name must be a non-empty string, got {self.name!r}")
        if not (math.isfinite(self.weight) and 0.0 <= self.weight <= 1.0):
            raise ValidationError(
                f"dimension {self.name!r}: weight must lie in [0, 1], got {self.weight!r}"
            )
        if not (math.isfinite(self.score) and 0.0 <= self.score <= 1.0):
            raise ValidationError(
                f"dimension {self.name!r}: score must lie in [0, 1], got {self.score!r}"
            )


@dataclass(frozen=True, slots=True)
class OddProfile:
    """Operational design domain: weighted condition mix plus exposure.

    delta is the fraction of full-domain demonstration mileage the
    profile actually requires (restricted domains need less).
    """

    dimensions: tuple[OddDimension, ...]
    delta: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        if not self.dimensions:
            raise ValidationError("OddProfile requires at least one dimension")
        for d in self.dimensions:
            if not isinstance(d, OddDimension):
                raise ValidationError(f"dimensions must be OddDimension items, got {d!r}")
        total = math.fsum(d.weight for d in self.dimensions)
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValidationError(
                f"dimension weights must sum to 1 within {_WEIGHT_SUM_TOL}, got {total!r}"
            )
        if not (math.isfinite(self.delta) and 0.0 < self.delta <= 1.0):
            raise ValidationError(f"delta must lie in (0, 1], got {self.delta!r}")


def crow_required_miles(params: CrowAmsaaParams, lambda_target: float) -> float:
    """Miles of growth testing to reach lambda_target, zero if already met."""
    if not (math.isfinite(lambda_target) and lambda_target > 0.0):
        raise ValidationError(f"lambda_target must be positive, got {lambda_target!r}")
    start_rate = params.alpha * params.severity
    if lambda_target >= start_rate:
        return 0.0
    return (start_rate / lambda_target) ** (1.0 / params.beta)


def crow_failure_rate(params: CrowAmsaaParams, miles: float) -> float:
    """Instantaneous failure rate per mile after the given growth miles."""
    if not (math.isfinite(miles) and miles > 0.0):
        raise ValidationError(f"miles must be positive, got {miles!r}")
    return params.alpha * miles ** (-params.beta) * params.severity


def poisson_required_miles(params: PoissonParams) -> float:
    """Zero-failure miles demonstrating lambda_target at the set confidence."""
    return -math.log(1.0 - params.confidence) * params.safety_factor / params.lambda_target


def gamma(profile: OddProfile) -> float:
    """Domain difficulty factor: the weight-averaged condition score.

    Permutation invariant in the dimensions; lies in [0, 1] because
    weights sum to one and scores are bounded by one.
    """
    return math.fsum(d.weight * d.score for d in profile.dimensions)


def demonstration_years(
    required_miles: float,
    gamma_value: float,
    delta: float,
    annual_miles: float,
) -> float:
    """Calendar years to accumulate the demonstration mileage.

    years = required_miles * gamma_value * delta / annual_miles.  The
    gamma factor may exceed 1 for domains harder than the reference mix
    (scenario overrides allow that); delta cannot exceed 1.
    """
    if not (math.isfinite(required_miles) and required_miles >= 0.0):
        raise ValidationError(
            f"required_miles must be >= 0, got {required_miles!r}"
        )
    if not (math.isfinite(gamma_value) and gamma_value > 0.0):
        raise ValidationError(f"gamma must be positive, got {gamma_value!r}")
    if not (math.isfinite(delta) and 0.0 < delta <= 1.0):
        raise ValidationError(f"delta must lie in (0, 1], got {delta!r}")
    if not (math.isfinite(annual_miles) and annual_miles > 0.0):
        raise ValidationError(f"annual_miles must be positive, got {annual_miles!r}")
    return required_miles * gamma_value * delta / annual_miles
