"""Scoring rules for predictions about which of several options is correct.

The classical rules (quadratic, Brier, logarithmic, and the convex-function
construction) score a full probability vector against the realized outcome.
The practical transform rescales any proper rule so that a chance-level guess
scores zero, the capped confidence scores ``max_points`` when correct, and the
sign of the score tells the forecaster whether they were right.
"""

from __future__ import annotations

import math
from typing import Callable

from .params import (
    ChoiceScoringParams,
    ScoreResult,
    validate_outcome_indicator,
    validate_probability_vector,
)

# A choice rule maps (probability assigned to the chosen answer, was it
# correct) to points, with higher points meaning a better prediction.
ChoiceRule = Callable[[float, bool], float]


def quadratic_score(probs, outcome) -> float:
    """Sum of p_i * (2 e_i - p_i).  Scores lie in [-1, 1]."""
    p = validate_probability_vector(probs)
    e = validate_outcome_indicator(outcome)
    if len(p) != len(e):
        raise ValueError(f"dimension mismatch: {len(p)} probabilities vs {len(e)} outcomes")
    return sum(pi * (2 * ei - pi) for pi, ei in zip(p, e))


def brier_score(probs, outcome) -> float:
    """Sum of squared errors (e_i - p_i)^2.  Lower is better; scores lie in [0, 2]."""
    p = validate_probability_vector(probs)
    e = validate_outcome_indicator(outcome)
    if len(p) != len(e):
        raise ValueError(f"dimension mismatch: {len(p)} probabilities vs {len(e)} outcomes")
    return sum((ei - pi) ** 2 for pi, ei in zip(p, e))


def log_score(probs, outcome) -> float:
    """Negative natural log of the probability assigned to the realized outcome.

    Lower is better.  Summed over independent predictions it equals the
    negative log of the probability assigned to the whole conjunction, so
    scoring events separately or jointly gives the same total.
    """
    p = validate_probability_vector(probs)
    e = validate_outcome_indicator(outcome)
    if len(p) != len(e):
        raise ValueError(f"dimension mismatch: {len(p)} probabilities vs {len(e)} outcomes")
    realized = p[e.index(1)]
    if realized <= 0.0:
        raise ValueError("zero probability on the realized outcome gives an infinite score")
    return -math.log(realized)


def proper_from_convex(
    f: Callable[[float], float],
    f_prime: Callable[[float], float],
    p0: float,
    outcome: bool,
) -> float:
    """Build a binary proper scoring rule from a differentiable convex function.

    Scores f(p) + (1-p) f'(p) when the outcome happens and f(p) - p f'(p)
    when it does not.  Convexity of ``f`` is the caller's responsibility;
    strictly convex ``f`` yields a strictly proper rule.
    """
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"probability {p0} outside [0, 1]")
    if outcome:
        return f(p0) + (1.0 - p0) * f_prime(p0)
    return f(p0) - p0 * f_prime(p0)


def clamp_probability(p: float, params: ChoiceScoringParams) -> float:
    """Clamp a stated confidence into [chance_level, confidence_cap]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return min(max(p, params.chance_level), params.confidence_cap)


def practical_score(
    base_rule: ChoiceRule,
    params: ChoiceScoringParams,
    p: float,
    correct: bool,
) -> float:
    """Rescale a higher-is-better proper rule into points.

        max_points * (S(p, c) - S(chance, c)) / (S(cap, 1) - S(chance, 1))

    The result is 0 at the chance level for either outcome, ``max_points``
    for a correct prediction at the cap, positive exactly when correct, and
    still proper on [chance_level, confidence_cap].
    """
    lo, hi = params.chance_level, params.confidence_cap
    if not lo <= p <= hi:
        raise ValueError(f"probability {p} outside [{lo}, {hi}]; clamp before scoring")
    denom = base_rule(hi, True) - base_rule(lo, True)
    if denom <= 0:
        raise ValueError(
            "degenerate normalization: base rule does not increase "
            f"between {lo} and {hi} on the correct branch"
        )
    return params.max_points * (base_rule(p, correct) - base_rule(lo, correct)) / denom


def binary_floor(params: ChoiceScoringParams) -> float:
    """Largest possible loss on a two-option question at the confidence cap.

    The same floor is applied to every question type for consistency, so one
    terrible prediction costs the same no matter the format.
    """
    coef = params.max_points / (math.log(params.confidence_cap) - math.log(0.5))
    return coef * (math.log(1.0 - params.confidence_cap) - math.log(0.5))


def practical_log_choice_score(
    p: float,
    correct: bool,
    params: ChoiceScoringParams,
    floor: float | None = None,
) -> ScoreResult:
    """The log rule under the practical transform; the engine's choice rule.

    With coef = max_points / (log(cap) - log(chance)):

        correct:    coef * (log(p) - log(chance))
        incorrect:  coef * (log(1 - p) - log(1 - chance))

    The base of the logarithm cancels.  Out-of-range confidences are clamped
    silently so the call is total.  Scores are floored at ``floor`` (by
    default the two-option worst case for these params), which only binds for
    questions whose chance level exceeds one half.
    """
    if params.confidence_cap >= 1.0:
        raise ValueError("confidence_cap must be below 1 for log-based scoring")
    p = clamp_probability(p, params)
    coef = params.max_points / (math.log(params.confidence_cap) - math.log(params.chance_level))
    if correct:
        raw = coef * (math.log(p) - math.log(params.chance_level))
    else:
        raw = coef * (math.log(1.0 - p) - math.log(1.0 - params.chance_level))
    if floor is None:
        floor = binary_floor(params)
    return ScoreResult(points=max(raw, floor), rule_id="practical_log")
