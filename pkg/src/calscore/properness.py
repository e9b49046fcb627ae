"""Brute-force verification of incentive properties.

A scoring rule is proper when reporting one's actual belief maximizes the
expected score.  This module checks that claim numerically: grid scans over
(believed, reported) pairs for choice rules, and exhaustive (lower, upper)
searches under explicit belief distributions for interval rules.  Everything
is deterministic; the grids and fixed-point quadrature are the oracle, so no
continuous optimizer is involved.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .params import PROBABILITY_SUM_TOL, IntervalForecast

ChoiceRule = Callable[[float, bool], float]
IntervalRule = Callable[[np.ndarray, IntervalForecast], np.ndarray]

# Composite midpoint rule with a fixed odd point count: deterministic and
# reproducible across runs.
QUADRATURE_POINTS = 10_001
# Error budget per expectation for the integrands handled here (piecewise
# smooth with a few kinks).  Gap checks treat anything within a couple of
# multiples of this as zero.
QUADRATURE_TOL = 1e-6


@dataclass(frozen=True)
class BeliefGrid:
    """Grids of believed and reported probabilities for a properness scan.

    The reported grid must be at least as fine as the believed grid, so an
    honest argmax is always representable within one report step.
    """

    believed: tuple[float, ...]
    reported: tuple[float, ...]

    def __post_init__(self) -> None:
        for name, grid in (("believed", self.believed), ("reported", self.reported)):
            if len(grid) < 2:
                raise ValueError(f"{name} grid needs at least two points")
            if any(not 0.0 <= v <= 1.0 for v in grid):
                raise ValueError(f"{name} grid has entries outside [0, 1]")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} grid must be strictly ascending")
        if self.report_step > self.believed_step + 1e-12:
            raise ValueError("reported grid must be at least as fine as the believed grid")

    @property
    def believed_step(self) -> float:
        return max(b - a for a, b in zip(self.believed, self.believed[1:]))

    @property
    def report_step(self) -> float:
        return max(b - a for a, b in zip(self.reported, self.reported[1:]))

    @classmethod
    def regular(
        cls, lo: float, hi: float, believed_step: float, report_step: float
    ) -> "BeliefGrid":
        def linspace(step: float) -> tuple[float, ...]:
            n = round((hi - lo) / step) + 1
            return tuple(np.linspace(lo, hi, n))

        return cls(believed=linspace(believed_step), reported=linspace(report_step))


@dataclass(frozen=True)
class PropernessReport:
    """Outcome of a choice-rule properness scan."""

    rule_id: str
    max_argmax_deviation: float
    worst_belief: float
    incentive_gap: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "max_argmax_deviation": self.max_argmax_deviation,
            "worst_belief": self.worst_belief,
            "incentive_gap": self.incentive_gap,
            "passed": self.passed,
        }


def expected_choice_score(rule: ChoiceRule, believed: float, reported: float) -> float:
    """Expected score of reporting ``reported`` when the actual probability of
    being correct is ``believed``."""
    for name, v in (("believed", believed), ("reported", reported)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} probability {v} outside [0, 1]")
    return believed * rule(reported, True) + (1.0 - believed) * rule(reported, False)


def verify_choice_properness(
    rule: ChoiceRule, grid: BeliefGrid, rule_id: str = "rule"
) -> PropernessReport:
    """Scan every believed probability for the report that maximizes expected
    score; pass when each argmax lies within one report step of honesty.

    Ties go to the lowest report.  The incentive gap is the largest expected
    advantage of the best grid report over the honest (off-grid allowed)
    report, floored at zero.
    """
    reported = np.asarray(grid.reported)
    s_correct = np.array([rule(q, True) for q in reported])
    s_incorrect = np.array([rule(q, False) for q in reported])

    worst_dev = 0.0
    worst_belief = grid.believed[0]
    gap = 0.0
    for p in grid.believed:
        expected = p * s_correct + (1.0 - p) * s_incorrect
        best_idx = int(np.argmax(expected))  # first maximum: lowest report wins ties
        deviation = abs(reported[best_idx] - p)
        if deviation > worst_dev:
            worst_dev = deviation
            worst_belief = p
        honest = expected_choice_score(rule, p, p)
        gap = max(gap, float(expected[best_idx]) - honest)
    return PropernessReport(
        rule_id=rule_id,
        max_argmax_deviation=float(worst_dev),
        worst_belief=float(worst_belief),
        incentive_gap=max(0.0, gap),
        passed=worst_dev <= grid.report_step + 1e-12,
    )


@dataclass(frozen=True)
class BeliefDistribution:
    """A forecaster's belief over the true value: uniform, log-uniform, or a
    finite set of weighted atoms."""

    kind: str
    lo: float | None = None
    hi: float | None = None
    atoms: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind in ("uniform", "log-uniform"):
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise ValueError(f"degenerate support [{self.lo}, {self.hi}]")
            if self.kind == "log-uniform" and self.lo <= 0:
                raise ValueError("log-uniform support must be positive")
        elif self.kind == "discrete":
            if not self.atoms:
                raise ValueError("discrete belief needs at least one atom")
            total = sum(w for _, w in self.atoms)
            if abs(total - 1.0) > PROBABILITY_SUM_TOL:
                raise ValueError(f"atom probabilities sum to {total}, expected 1")
            if any(w < 0 for _, w in self.atoms):
                raise ValueError("atom probabilities must be nonnegative")
        else:
            raise ValueError(f"unknown belief kind {self.kind!r}")

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "BeliefDistribution":
        return cls(kind="uniform", lo=lo, hi=hi)

    @classmethod
    def log_uniform(cls, lo: float, hi: float) -> "BeliefDistribution":
        return cls(kind="log-uniform", lo=lo, hi=hi)

    @classmethod
    def discrete(cls, atoms: Sequence[tuple[float, float]]) -> "BeliefDistribution":
        ordered = tuple(sorted((float(v), float(w)) for v, w in atoms))
        return cls(kind="discrete", atoms=ordered)

    @classmethod
    def point_mass(cls, value: float) -> "BeliefDistribution":
        return cls.discrete([(value, 1.0)])

    def support(self) -> tuple[float, float]:
        if self.kind == "discrete":
            values = [v for v, _ in self.atoms]
            return min(values), max(values)
        return self.lo, self.hi

    def quantile(self, q: float) -> float:
        """Generalized inverse CDF: the smallest value with at least mass q
        at or below it."""
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"quantile level {q} outside [0, 1]")
        if self.kind == "uniform":
            return self.lo + q * (self.hi - self.lo)
        if self.kind == "log-uniform":
            return float(np.exp(np.log(self.lo) + q * (np.log(self.hi) - np.log(self.lo))))
        cumulative = np.cumsum([w for _, w in self.atoms])
        idx = bisect_left(cumulative, q - 1e-12)
        idx = min(idx, len(self.atoms) - 1)
        return self.atoms[idx][0]

    def grid(self, n: int = QUADRATURE_POINTS) -> tuple[np.ndarray, np.ndarray]:
        """Evaluation points and weights: exact atoms for discrete beliefs,
        midpoint cells in the distribution's natural parameter otherwise."""
        if self.kind == "discrete":
            values = np.array([v for v, _ in self.atoms])
            weights = np.array([w for _, w in self.atoms])
            return values, weights
        if self.kind == "uniform":
            edges = np.linspace(self.lo, self.hi, n + 1)
            mids = (edges[:-1] + edges[1:]) / 2.0
        else:
            log_edges = np.linspace(np.log(self.lo), np.log(self.hi), n + 1)
            mids = np.exp((log_edges[:-1] + log_edges[1:]) / 2.0)
        return mids, np.full(n, 1.0 / n)


def expected_interval_score(
    rule: IntervalRule, belief: BeliefDistribution, forecast: IntervalForecast
) -> float:
    """Expected score of a submitted interval under a belief: exact summation
    for discrete beliefs, fixed midpoint quadrature otherwise.

    The rule must be defined on the whole support (endpoints included), so a
    positive-domain rule rejects beliefs whose support touches zero even
    though midpoint cells never sample the endpoints themselves.
    """
    if belief.kind != "discrete":
        rule(np.array([belief.lo, belief.hi]), forecast)  # domain probe
    points, weights = belief.grid()
    return float(np.dot(weights, rule(points, forecast)))


@dataclass(frozen=True)
class SearchGrid:
    """Candidate interval endpoints for the brute-force report search."""

    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ValueError("search grid needs at least two points")
        if not self.lo < self.hi:
            raise ValueError(f"empty search range [{self.lo}, {self.hi}]")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"unknown spacing {self.spacing!r}")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError("log spacing needs a positive range")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


def best_interval(
    rule: IntervalRule,
    belief: BeliefDistribution,
    search: SearchGrid,
    coverage: float = 0.9,
) -> tuple[IntervalForecast, float]:
    """Exhaustively evaluate every grid interval (lower <= upper) and return
    the expectation maximizer.

    Ties break toward the smallest lower bound, then the smallest upper
    bound, independent of evaluation order.
    """
    endpoints = search.points()
    eval_points, weights = belief.grid()
    lo_support, hi_support = belief.support()
    if endpoints[0] > lo_support or endpoints[-1] < hi_support:
        raise ValueError("search grid does not cover the belief support")

    best_forecast = None
    best_value = -np.inf
    for i, lower in enumerate(endpoints):
        for upper in endpoints[i:]:
            forecast = IntervalForecast(float(lower), float(upper), coverage)
            value = float(np.dot(weights, rule(eval_points, forecast)))
            if value > best_value:
                best_value = value
                best_forecast = forecast
    return best_forecast, best_value


def honest_interval(belief: BeliefDistribution, coverage: float) -> IntervalForecast:
    """Equal-tail interval of the belief: quantiles at (1-coverage)/2 and
    1-(1-coverage)/2."""
    if not 0.0 < coverage < 1.0:
        raise ValueError(f"coverage must be in (0, 1), got {coverage}")
    tail = (1.0 - coverage) / 2.0
    return IntervalForecast(belief.quantile(tail), belief.quantile(1.0 - tail), coverage)


def incentive_gap(
    rule: IntervalRule,
    belief: BeliefDistribution,
    coverage: float,
    search: SearchGrid,
) -> float:
    """Expected-score advantage of the best grid report over the honest
    equal-tail interval.

    Nonnegative up to quadrature noise for any rule; within a couple of
    multiples of QUADRATURE_TOL of zero exactly when the rule is proper.
    """
    _, best_value = best_interval(rule, belief, search, coverage)
    honest = expected_interval_score(rule, belief, honest_interval(belief, coverage))
    return best_value - honest


@dataclass(frozen=True)
class GapRow:
    """One line of an incentive-gap table."""

    rule_id: str
    belief: str
    gap: float
    proper_expected: bool
    passed: bool = field(default=False)

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "belief": self.belief,
            "gap": self.gap,
            "proper_expected": self.proper_expected,
            "passed": self.passed,
        }


def properness_report_text(reports: Sequence[PropernessReport]) -> str:
    """Aligned-column rendering of properness scan results."""
    header = f"{'rule':<28}{'worst dev':>12}{'at belief':>12}{'gap':>14}  verdict"
    lines = [header, "-" * len(header)]
    for r in reports:
        verdict = "pass" if r.passed else "FAIL"
        lines.append(
            f"{r.rule_id:<28}{r.max_argmax_deviation:>12.6f}"
            f"{r.worst_belief:>12.4f}{r.incentive_gap:>14.3e}  {verdict}"
        )
    return "\n".join(lines)


def gap_table_text(rows: Sequence[GapRow]) -> str:
    """Aligned-column rendering of an incentive-gap table."""
    header = f"{'rule':<12}{'belief':<28}{'gap':>14}{'expected':>12}  verdict"
    lines = [header, "-" * len(header)]
    for row in rows:
        expected = "gap ~ 0" if row.proper_expected else "gap > 0"
        verdict = "pass" if row.passed else "FAIL"
        lines.append(
            f"{row.rule_id:<12}{row.belief:<28}{row.gap:>14.6f}{expected:>12}  {verdict}"
        )
    return "\n".join(lines)


def reports_to_json(reports: Sequence[PropernessReport | GapRow]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)
