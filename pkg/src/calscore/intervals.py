"""Scoring rules for interval predictions.

Two families live here.  The width-penalty rules (``linear_interval_score``,
``log_interval_score``) are strictly proper: a default number of points minus
a penalty for interval width and, on a miss, a penalty for how far the true
value landed outside.  The boundary-zero rules (``dist_score_*``,
``mag_score_*``) trade properness for friendlier feedback: zero points exactly
at the interval edges, a peak of at most ``max_points`` at the middle, and a
score that fades to zero as the interval becomes uninformatively wide.

All rules accept a scalar or an array of true values ``x`` and return points
of matching shape.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .params import IntervalForecast, IntervalScoringParams, ScoreResult


def _as_points(x, values: np.ndarray):
    if np.isscalar(x) or getattr(x, "ndim", 1) == 0:
        return float(values)
    return values


def generic_interval_score(
    x: float,
    forecast: IntervalForecast,
    s1: Callable[[float], float],
    s2: Callable[[float], float],
    u: Callable[[float], float],
) -> float:
    """Quantile-based interval score built from nondecreasing functions s1, s2.

        u(x) - (1-coverage)/2 * (s2(U) - s1(L))
             - { s1(L) - s1(x)  if x < L
                 0               if L <= x <= U
                 s2(x) - s2(U)  if x > U }

    Proper for equal-tail interval reports whenever s1 and s2 are
    nondecreasing (not checked here).
    """
    lower, upper = forecast.lower, forecast.upper
    score = u(x) - (1.0 - forecast.coverage) / 2.0 * (s2(upper) - s1(lower))
    if x < lower:
        score -= s1(lower) - s1(x)
    elif x > upper:
        score -= s2(x) - s2(upper)
    return score


def linear_interval_score(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Proper rule penalizing interval width and miss distance, both in units
    of ``scale``."""
    xv = np.asarray(x, dtype=float)
    lower, upper, c = forecast.lower, forecast.upper, params.scale
    half_tail = (1.0 - forecast.coverage) / 2.0
    miss = np.where(
        xv < lower, (lower - xv) / c, np.where(xv > upper, (xv - upper) / c, 0.0)
    )
    values = params.offset - (half_tail * (upper - lower) / c + miss)
    return _as_points(x, values)


def log_interval_score(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Proper rule penalizing the log-ratio width and miss, so rescaling all
    inputs by a positive constant leaves the score unchanged.

    Requires strictly positive x, lower, and upper.
    """
    xv = np.asarray(x, dtype=float)
    lower, upper, c = forecast.lower, forecast.upper, params.scale
    if lower <= 0 or upper <= 0:
        raise ValueError(f"log interval scoring needs positive bounds, got [{lower}, {upper}]")
    if np.any(xv <= 0):
        raise ValueError("log interval scoring needs a positive true value")
    half_tail = (1.0 - forecast.coverage) / 2.0
    log_x = np.log(xv)
    miss = np.where(
        xv < lower,
        (np.log(lower) - log_x) / c,
        np.where(xv > upper, (log_x - np.log(upper)) / c, 0.0),
    )
    values = params.offset - (half_tail * np.log(upper / lower) / c + miss)
    return _as_points(x, values)


def _boundary_zero_kernel(
    r: np.ndarray, s: float, t: np.ndarray, coverage: float, max_points: float
) -> np.ndarray:
    """Shared piecewise kernel of the boundary-zero rules.

    ``r`` and ``t`` measure how far the true value sits below the lower and
    above the upper bound (positive on a miss), ``s`` the interval width, all
    in scale units.  The distance and ratio variants differ only in how the
    three are computed.
    """
    below = r > 0
    above = t > 0
    inside = ~(below | above)
    out = np.empty_like(r)
    rt = r[inside] * t[inside]
    out[inside] = 4.0 * max_points * (rt / (s * s)) * (1.0 - s / (1.0 + s))
    rb = r[below]
    out[below] = -2.0 / (1.0 - coverage) * rb - rb / (1.0 + rb) * s
    ta = t[above]
    out[above] = -2.0 / (1.0 - coverage) * ta - ta / (1.0 + ta) * s
    return out


def dist_score_raw(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Boundary-zero rule on the linear distance scale (no expansion, no floor).

    Zero at x = lower and x = upper; peaks at the midpoint with value
    max_points / (1 + width/scale); on a miss, penalizes distance at
    2/(1-coverage) per scale unit plus a width-dependent term.
    """
    lower, upper = forecast.lower, forecast.upper
    if upper <= lower:
        raise ValueError(f"need a positive-width interval, got [{lower}, {upper}]")
    xv = np.asarray(x, dtype=float)
    c = params.scale
    r = (lower - xv) / c
    t = (xv - upper) / c
    s = (upper - lower) / c
    values = _boundary_zero_kernel(
        np.atleast_1d(r), s, np.atleast_1d(t), forecast.coverage, params.max_points
    ).reshape(np.shape(xv))
    return _as_points(x, values)


def mag_score_raw(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Boundary-zero rule on the log-ratio scale (no expansion, no floor).

    Same kernel as ``dist_score_raw`` with distances replaced by log ratios,
    so the peak sits at the geometric mean and the score is unit invariant.
    Requires strictly positive x, lower, and upper.
    """
    lower, upper = forecast.lower, forecast.upper
    if lower <= 0:
        raise ValueError(f"ratio scoring needs positive bounds, got lower={lower}")
    if upper <= lower:
        raise ValueError(f"need a positive-width interval, got [{lower}, {upper}]")
    xv = np.asarray(x, dtype=float)
    if np.any(xv <= 0):
        raise ValueError("ratio scoring needs a positive true value")
    c = params.scale
    log_x = np.log(xv)
    r = (np.log(lower) - log_x) / c
    t = (log_x - np.log(upper)) / c
    s = np.log(upper / lower) / c
    values = _boundary_zero_kernel(
        np.atleast_1d(r), s, np.atleast_1d(t), forecast.coverage, params.max_points
    ).reshape(np.shape(xv))
    return _as_points(x, values)


def _expand_additive(forecast: IntervalForecast, expansion: float) -> IntervalForecast:
    return IntervalForecast(
        forecast.lower - expansion, forecast.upper + expansion, forecast.coverage
    )


def _expand_multiplicative(forecast: IntervalForecast, expansion: float) -> IntervalForecast:
    return IntervalForecast(
        forecast.lower * (1.0 - expansion),
        forecast.upper * (1.0 + expansion),
        forecast.coverage,
    )


def dist_final_points(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Final distance score: expand the interval by ``expansion`` on each
    side, score with the boundary-zero rule, floor at ``min_points``."""
    widened = _expand_additive(forecast, params.expansion)
    values = np.maximum(dist_score_raw(x, widened, params), params.min_points)
    return _as_points(x, np.asarray(values))


def mag_final_points(x, forecast: IntervalForecast, params: IntervalScoringParams):
    """Final ratio score: widen the interval multiplicatively (preserving unit
    invariance), score with the boundary-zero rule, floor at ``min_points``."""
    widened = _expand_multiplicative(forecast, params.expansion)
    values = np.maximum(mag_score_raw(x, widened, params), params.min_points)
    return _as_points(x, np.asarray(values))


def _miss_components(
    x: float, widened: IntervalForecast, params: IntervalScoringParams, log_scale: bool
) -> dict[str, float] | None:
    """Width/distance penalty breakdown for a miss; None when x is inside."""
    c = params.scale
    if log_scale:
        r = np.log(widened.lower / x) / c
        t = np.log(x / widened.upper) / c
        s = np.log(widened.upper / widened.lower) / c
    else:
        r = (widened.lower - x) / c
        t = (x - widened.upper) / c
        s = (widened.upper - widened.lower) / c
    miss = r if r > 0 else t
    if miss <= 0:
        return None
    return {
        "distance_penalty": 2.0 / (1.0 - widened.coverage) * miss,
        "width_penalty": miss / (1.0 + miss) * s,
    }


def dist_score_final(
    x: float, forecast: IntervalForecast, params: IntervalScoringParams
) -> ScoreResult:
    """``dist_final_points`` for a single true value, as a ScoreResult."""
    points = float(dist_final_points(x, forecast, params))
    widened = _expand_additive(forecast, params.expansion)
    return ScoreResult(
        points=points,
        rule_id="distance",
        components=_miss_components(x, widened, params, log_scale=False),
    )


def mag_score_final(
    x: float, forecast: IntervalForecast, params: IntervalScoringParams
) -> ScoreResult:
    """``mag_final_points`` for a single true value, as a ScoreResult."""
    points = float(mag_final_points(x, forecast, params))
    widened = _expand_multiplicative(forecast, params.expansion)
    return ScoreResult(
        points=points,
        rule_id="magnitude",
        components=_miss_components(x, widened, params, log_scale=True),
    )
