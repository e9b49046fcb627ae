"""Parameter sets, default constants, and shared result types for the scoring rules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Default rule constants used across the engine.
MAX_POINTS_DEFAULT = 10.0
CONFIDENCE_CAP_DEFAULT = 0.99
# Largest possible loss under the choice rule at the default cap on a
# two-option question: -10 * ln(50) / ln(99/50).  Used as the floor for
# every rule so a single prediction cannot dominate a session.
MIN_POINTS_DEFAULT = -57.26893683880667
EXPANSION_DEFAULT = 0.4
DISTANCE_SCALE_DEFAULT = 100.0
MAGNITUDE_SCALE_DEFAULT = math.log(100.0)
COVERAGE_DEFAULT = 0.9

PROBABILITY_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ChoiceScoringParams:
    """Constants for scoring a single "is my answer correct" prediction.

    ``chance_level`` is the probability of being correct under a uniform
    random guess (the rule's zero point); ``confidence_cap`` is the largest
    confidence a forecaster may state.
    """

    max_points: float = MAX_POINTS_DEFAULT
    confidence_cap: float = CONFIDENCE_CAP_DEFAULT
    chance_level: float = 0.5

    def __post_init__(self) -> None:
        if self.max_points <= 0:
            raise ValueError(f"max_points must be positive, got {self.max_points}")
        if not 0 < self.chance_level < self.confidence_cap <= 1:
            raise ValueError(
                "need 0 < chance_level < confidence_cap <= 1, got "
                f"chance_level={self.chance_level}, confidence_cap={self.confidence_cap}"
            )


@dataclass(frozen=True)
class IntervalScoringParams:
    """Constants for scoring an interval prediction.

    ``scale`` sets the distance unit (or, for ratio scoring, the log base
    via scale = ln(base)); ``offset`` is the default-points constant of the
    width-penalty rules; ``expansion`` widens the submitted interval slightly
    before scoring so boundary hits still earn positive points.
    """

    scale: float = DISTANCE_SCALE_DEFAULT
    offset: float = 0.0
    max_points: float = MAX_POINTS_DEFAULT
    min_points: float = MIN_POINTS_DEFAULT
    expansion: float = EXPANSION_DEFAULT

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.max_points <= 0:
            raise ValueError(f"max_points must be positive, got {self.max_points}")
        if self.min_points >= 0:
            raise ValueError(f"min_points must be negative, got {self.min_points}")
        if not 0 <= self.expansion < 1:
            raise ValueError(f"expansion must be in [0, 1), got {self.expansion}")


MAGNITUDE_PARAMS_DEFAULT = IntervalScoringParams(scale=MAGNITUDE_SCALE_DEFAULT)


@dataclass(frozen=True)
class IntervalForecast:
    """A range [lower, upper] asserted to contain the true value with
    probability ``coverage``."""

    lower: float
    upper: float
    coverage: float = COVERAGE_DEFAULT

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if not 0 < self.coverage < 1:
            raise ValueError(f"coverage must be in (0, 1), got {self.coverage}")


@dataclass(frozen=True)
class ScoreResult:
    """Points awarded for one prediction, with the rule that produced them."""

    points: float
    rule_id: str
    components: dict[str, float] | None = field(default=None)


def validate_probability_vector(entries) -> list[float]:
    """Check a full probability assignment over mutually exclusive options."""
    probs = [float(v) for v in entries]
    if not probs:
        raise ValueError("probability vector is empty")
    for i, v in enumerate(probs):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"probability at index {i} is {v}, outside [0, 1]")
    total = sum(probs)
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        raise ValueError(f"probabilities sum to {total}, expected 1")
    return probs


def validate_outcome_indicator(entries) -> list[int]:
    """Check a one-hot vector marking which option actually occurred."""
    flags = [int(v) for v in entries]
    if any(v not in (0, 1) for v in flags):
        raise ValueError("outcome indicator entries must be 0 or 1")
    if sum(flags) != 1:
        raise ValueError(f"outcome indicator must mark exactly one option, marks {sum(flags)}")
    return flags


def display_points(points: float) -> int:
    """Round points to the nearest integer, halves away from zero.

    Scores are stored at full precision; rounding happens only at the
    presentation layer.
    """
    if points >= 0:
        return int(math.floor(points + 0.5))
    return int(math.ceil(points - 0.5))
