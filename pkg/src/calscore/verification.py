"""Named, self-contained checks behind the ``verify`` command.

Each suite returns plain result records so the CLI can render them as text
or JSON and turn failures into exit codes.  The checks mirror the library's
contract: bounds, signs, zeros, monotonicity, continuity, peak locations,
unit invariance, and the properness split between the width-penalty rules
(proper) and the boundary-zero rules (not proper, by design).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .choice import (
    binary_floor,
    brier_score,
    log_score,
    practical_log_choice_score,
    practical_score,
    proper_from_convex,
    quadratic_score,
)
from .intervals import (
    dist_final_points,
    dist_score_raw,
    linear_interval_score,
    log_interval_score,
    mag_final_points,
    mag_score_raw,
)
from .params import (
    ChoiceScoringParams,
    IntervalForecast,
    IntervalScoringParams,
    MAGNITUDE_PARAMS_DEFAULT,
)
from .properness import (
    QUADRATURE_TOL,
    BeliefDistribution,
    BeliefGrid,
    GapRow,
    PropernessReport,
    SearchGrid,
    incentive_gap,
    verify_choice_properness,
)

# ---------------------------------------------------------------------------
# Binary choice-rule adapters: probability of the chosen answer -> points,
# oriented so that higher is better.


def binary_quadratic(p: float, correct: bool) -> float:
    return quadratic_score((p, 1.0 - p), (1, 0) if correct else (0, 1))


def binary_brier_oriented(p: float, correct: bool) -> float:
    return -brier_score((p, 1.0 - p), (1, 0) if correct else (0, 1))


def binary_log_oriented(p: float, correct: bool) -> float:
    return -log_score((p, 1.0 - p), (1, 0) if correct else (0, 1))


def convex_square_rule(p: float, correct: bool) -> float:
    return proper_from_convex(lambda v: v * v, lambda v: 2.0 * v, p, correct)


def practical_log_rule(params: ChoiceScoringParams):
    def rule(p: float, correct: bool) -> float:
        return practical_log_choice_score(p, correct, params).points

    return rule


# ---------------------------------------------------------------------------
# Interval-rule adapters parameterized once.


def linear_rule(params: IntervalScoringParams):
    return lambda x, forecast: linear_interval_score(x, forecast, params)


def log_rule(params: IntervalScoringParams):
    return lambda x, forecast: log_interval_score(x, forecast, params)


def distance_rule(params: IntervalScoringParams):
    return lambda x, forecast: dist_final_points(x, forecast, params)


def magnitude_rule(params: IntervalScoringParams):
    return lambda x, forecast: mag_final_points(x, forecast, params)


# ---------------------------------------------------------------------------
# Suites.


def run_properness_suite(
    believed_step: float = 0.01, report_step: float = 0.001
) -> list[PropernessReport]:
    """Properness scans for every rule that claims to be proper."""
    binary = ChoiceScoringParams(chance_level=0.5)
    clamped = BeliefGrid.regular(0.5, 0.99, believed_step, report_step)
    unclamped = BeliefGrid.regular(0.01, 0.99, believed_step, report_step)

    reports = [
        verify_choice_properness(practical_log_rule(binary), clamped, "practical_log"),
        verify_choice_properness(binary_quadratic, unclamped, "quadratic"),
        verify_choice_properness(binary_brier_oriented, unclamped, "brier_oriented"),
        verify_choice_properness(binary_log_oriented, unclamped, "log_oriented"),
        verify_choice_properness(convex_square_rule, unclamped, "convex_square"),
    ]
    for base, name in (
        (binary_quadratic, "practical(quadratic)"),
        (binary_brier_oriented, "practical(brier)"),
        (binary_log_oriented, "practical(log)"),
        (convex_square_rule, "practical(convex_square)"),
    ):
        rule = lambda p, c, base=base: practical_score(base, binary, p, c)
        reports.append(verify_choice_properness(rule, clamped, name))
    return reports


def run_interval_gap_suite(grid_count: int = 200) -> list[GapRow]:
    """Incentive gaps: near zero for the proper rules, strictly positive for
    the boundary-zero rules."""
    dist_params = IntervalScoringParams()
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    uniform = BeliefDistribution.uniform(0.0, 100.0)
    log_uniform = BeliefDistribution.log_uniform(1.0, 1e4)
    linear_search = SearchGrid(0.0, 100.0, grid_count, "linear")
    log_search = SearchGrid(1.0, 1e4, grid_count, "log")
    coverage = 0.9

    cases = [
        ("linear", linear_rule(dist_params), uniform, "uniform[0,100]", linear_search, True),
        ("log", log_rule(mag_params), log_uniform, "log-uniform[1,1e4]", log_search, True),
        ("distance", distance_rule(dist_params), uniform, "uniform[0,100]", linear_search, False),
        ("magnitude", magnitude_rule(mag_params), log_uniform, "log-uniform[1,1e4]", log_search, False),
    ]
    rows = []
    for rule_id, rule, belief, belief_label, search, proper in cases:
        gap = incentive_gap(rule, belief, coverage, search)
        passed = gap <= 2 * QUADRATURE_TOL if proper else gap > 10 * QUADRATURE_TOL
        rows.append(GapRow(rule_id, belief_label, gap, proper, passed))
    return rows


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _check(name: str, passed: bool, detail: str) -> InvariantCheck:
    return InvariantCheck(name, bool(passed), detail)


def _check_zero_at_chance() -> InvariantCheck:
    worst = 0.0
    for chance in (0.5, 1 / 3, 0.25, 0.4):
        params = ChoiceScoringParams(chance_level=chance)
        for correct in (True, False):
            worst = max(worst, abs(practical_log_choice_score(chance, correct, params).points))
    return _check("choice-zero-at-chance", worst <= 1e-12, f"max |score| {worst:.2e}")


def _check_sign_monotonic() -> InvariantCheck:
    ok = True
    for chance in (0.5, 1 / 3, 0.25, 0.4):
        params = ChoiceScoringParams(chance_level=chance)
        ps = np.linspace(chance, 0.99, 501)[1:]
        wins = np.array([practical_log_choice_score(p, True, params).points for p in ps])
        losses = np.array([practical_log_choice_score(p, False, params).points for p in ps])
        ok &= bool(np.all(wins > 0) and np.all(np.diff(wins) > 0))
        ok &= bool(np.all(losses < 0) and np.all(np.diff(losses) < 0))
    return _check("choice-sign-monotonic", ok, "500-point sweeps, four chance levels")


def _check_choice_bounds(rng: random.Random) -> InvariantCheck:
    ok = True
    for chance in (0.5, 1 / 3, 0.25, 0.4, 2 / 3):
        params = ChoiceScoringParams(chance_level=chance)
        floor = binary_floor(params)
        for _ in range(2000):
            pts = practical_log_choice_score(rng.random(), rng.random() < 0.5, params).points
            ok &= floor - 1e-9 <= pts <= params.max_points + 1e-9
    return _check("choice-bounds", ok, "random confidences incl. chance level 2/3")


def _check_quadratic_facts() -> InvariantCheck:
    crossing = 1.0 - math.sqrt(2.0) / 2.0
    at_crossing = abs(quadratic_score((crossing, 1 - crossing), (1, 0)))
    uniform_ok = all(
        abs(quadratic_score([1.0 / n] * n, [1] + [0] * (n - 1)) - 1.0 / n) <= 1e-12
        for n in range(2, 11)
    )
    return _check(
        "quadratic-facts",
        at_crossing <= 1e-12 and uniform_ok,
        f"|score| at crossing {at_crossing:.2e}; uniform guess = 1/n for n in 2..10",
    )


def _check_log_additivity(rng: random.Random) -> InvariantCheck:
    worst = 0.0
    for _ in range(1000):
        a, b = rng.uniform(0.01, 0.999), rng.uniform(0.01, 0.999)
        separate = log_score((a, 1 - a), (1, 0)) + log_score((b, 1 - b), (1, 0))
        joint = log_score((a * b, 1 - a * b), (1, 0))
        worst = max(worst, abs(separate - joint))
    return _check("log-additivity", worst <= 1e-12, f"max deviation {worst:.2e}")


def _check_boundary_zero(rng: random.Random) -> InvariantCheck:
    params = IntervalScoringParams()
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    worst = 0.0
    for _ in range(500):
        lower = rng.uniform(-50, 50)
        upper = lower + rng.uniform(0.1, 100)
        f = IntervalForecast(lower, upper, rng.uniform(0.5, 0.95))
        worst = max(worst, abs(dist_score_raw(lower, f, params)),
                    abs(dist_score_raw(upper, f, params)))
        g_lower = math.exp(rng.uniform(0, 7))
        g = IntervalForecast(g_lower, g_lower * rng.uniform(1.1, 100), f.coverage)
        worst = max(worst, abs(mag_score_raw(g.lower, g, mag_params)),
                    abs(mag_score_raw(g.upper, g, mag_params)))
    return _check("interval-boundary-zero", worst <= 1e-12, f"max |score| {worst:.2e}")


def _check_interior_peak() -> InvariantCheck:
    params = IntervalScoringParams()
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    ok = True
    details = []
    f = IntervalForecast(10.0, 60.0, 0.9)
    xs = np.linspace(f.lower, f.upper, 100_001)
    values = dist_score_raw(xs, f, params)
    peak_x = xs[int(np.argmax(values))]
    s = (f.upper - f.lower) / params.scale
    expected_peak = params.max_points / (1.0 + s)
    ok &= abs(peak_x - 35.0) <= xs[1] - xs[0]
    ok &= abs(float(np.max(values)) - expected_peak) <= 1e-9
    details.append(f"distance peak at {peak_x:.4f}")

    g = IntervalForecast(10.0, 1000.0, 0.9)
    xs = np.exp(np.linspace(np.log(g.lower), np.log(g.upper), 100_001))
    values = mag_score_raw(xs, g, mag_params)
    peak_x = xs[int(np.argmax(values))]
    s = math.log(g.upper / g.lower) / mag_params.scale
    ok &= abs(peak_x - 100.0) <= 0.02  # grid step near the geometric mean
    ok &= abs(float(np.max(values)) - mag_params.max_points / (1.0 + s)) <= 1e-9
    details.append(f"magnitude peak at {peak_x:.4f}")
    return _check("interval-interior-peak", ok, "; ".join(details))


def _check_bounds_floor(rng: random.Random) -> InvariantCheck:
    params = IntervalScoringParams()
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    n = 20_000
    rnd = np.random.default_rng(rng.randrange(2**32))
    lower = rnd.uniform(-1e4, 1e4, n)
    upper = lower + rnd.uniform(0.0, 1e4, n)
    x = rnd.uniform(-1e6, 1e6, n)
    ok = True
    for i in range(n):
        f = IntervalForecast(lower[i], upper[i], 0.9)
        pts = dist_final_points(x[i], f, params)
        ok &= params.min_points <= pts <= params.max_points
    extreme = dist_final_points(1e10, IntervalForecast(0.0, 1.0, 0.9), params)
    ok &= extreme == params.min_points
    far = mag_final_points(10.0, IntervalForecast(1e9, 1.000000001e9, 0.9), mag_params)
    ok &= far == mag_params.min_points
    return _check("interval-bounds-floor", ok, "floor hit exactly on extreme misses")


def _continuity_jump(rng: random.Random, cases: int) -> float:
    dist_params = IntervalScoringParams()
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    eps = 1e-6
    worst = 0.0
    for _ in range(cases):
        if rng.random() < 0.5:
            score, params = dist_final_points, dist_params
            lower = rng.uniform(-50, 50)
            upper = lower + rng.uniform(0.0, 100)
            seam = lower - params.expansion if rng.random() < 0.5 else upper + params.expansion
        else:
            score, params = mag_final_points, mag_params
            lower = math.exp(rng.uniform(0.0, 7.0))
            upper = lower * rng.uniform(1.0, 100.0)
            seam = (
                lower * (1 - params.expansion)
                if rng.random() < 0.5
                else upper * (1 + params.expansion)
            )
        coverage = rng.uniform(0.5, 0.95)
        base = score(seam, IntervalForecast(lower, upper, coverage), params)
        for dx in (-eps, eps):
            worst = max(
                worst,
                abs(score(seam + dx, IntervalForecast(lower, upper, coverage), params) - base),
                abs(score(seam, IntervalForecast(lower + dx, upper + dx, coverage), params) - base),
                abs(score(seam, IntervalForecast(lower, upper + dx, coverage), params) - base),
            )
    return worst


def _check_continuity(rng: random.Random) -> InvariantCheck:
    worst = _continuity_jump(rng, 2000)
    return _check("interval-continuity", worst < 1e-4, f"max seam jump {worst:.2e}")


def _check_unit_invariance(rng: random.Random) -> InvariantCheck:
    mag_params = MAGNITUDE_PARAMS_DEFAULT
    worst = 0.0
    for _ in range(1000):
        lower = math.exp(rng.uniform(0.0, 7.0))
        upper = lower * rng.uniform(1.01, 100.0)
        x = math.exp(rng.uniform(-1.0, 10.0))
        scale_factor = math.exp(rng.uniform(-6.0, 6.0))
        f = IntervalForecast(lower, upper, 0.9)
        g = IntervalForecast(lower * scale_factor, upper * scale_factor, 0.9)
        a = mag_final_points(x, f, mag_params)
        b = mag_final_points(x * scale_factor, g, mag_params)
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
        a = log_interval_score(x, f, mag_params)
        b = log_interval_score(x * scale_factor, g, mag_params)
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return _check("unit-invariance", worst <= 1e-9, f"max relative drift {worst:.2e}")


def _check_kernel_agreement(rng: random.Random) -> InvariantCheck:
    """The distance and ratio rules share one kernel: feeding them inputs that
    produce identical (miss, width) measurements must give identical scores."""
    unit = IntervalScoringParams(scale=1.0)
    worst = 0.0
    for _ in range(1000):
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        g = b + rng.uniform(0.05, 3.0)
        coverage = rng.uniform(0.5, 0.95)
        lin = dist_score_raw(a, IntervalForecast(b, g, coverage), unit)
        expo = mag_score_raw(
            math.exp(a), IntervalForecast(math.exp(b), math.exp(g), coverage), unit
        )
        worst = max(worst, abs(lin - expo))
    return _check("kernel-agreement", worst <= 1e-9, f"max difference {worst:.2e}")


def _check_wide_interval_vanishes() -> InvariantCheck:
    params = IntervalScoringParams()
    values = [
        abs(dist_score_raw(0.0, IntervalForecast(-w, w, 0.9), params))
        for w in (1e3, 1e5, 1e7)
    ]
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    return _check(
        "wide-interval-vanishes",
        decreasing and values[-1] < 1e-3,
        f"interior score at half-width 1e7: {values[-1]:.2e}",
    )


def run_invariant_suite(seed: int = 20260810) -> list[InvariantCheck]:
    """The full invariant matrix over both scoring families."""
    rng = random.Random(seed)
    return [
        _check_zero_at_chance(),
        _check_sign_monotonic(),
        _check_choice_bounds(rng),
        _check_quadratic_facts(),
        _check_log_additivity(rng),
        _check_boundary_zero(rng),
        _check_interior_peak(),
        _check_bounds_floor(rng),
        _check_continuity(rng),
        _check_unit_invariance(rng),
        _check_kernel_agreement(rng),
        _check_wide_interval_vanishes(),
    ]


def invariant_report_text(checks: list[InvariantCheck]) -> str:
    width = max(len(c.name) for c in checks) + 2
    lines = []
    for c in checks:
        verdict = "pass" if c.passed else "FAIL"
        lines.append(f"{c.name:<{width}}{verdict}  {c.detail}")
    return "\n".join(lines)
