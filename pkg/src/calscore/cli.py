"""Command-line surface: one-off scoring, verification suites, simulation,
deck management, and the HTTP server.

Exit codes: 0 success or all checks passed, 1 verification failure, 2 usage
error, 3 I/O or data error.
"""

from __future__ import annotations

import json
import shutil
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from .choice import clamp_probability, practical_log_choice_score
from .deck import DeckValidationError, load_deck
from .intervals import (
    dist_score_final,
    dist_score_raw,
    linear_interval_score,
    log_interval_score,
    mag_score_final,
    mag_score_raw,
)
from .params import (
    CONFIDENCE_CAP_DEFAULT,
    COVERAGE_DEFAULT,
    DISTANCE_SCALE_DEFAULT,
    EXPANSION_DEFAULT,
    MAGNITUDE_SCALE_DEFAULT,
    MAX_POINTS_DEFAULT,
    MIN_POINTS_DEFAULT,
    ChoiceScoringParams,
    IntervalForecast,
    IntervalScoringParams,
    display_points,
)
from .properness import gap_table_text, properness_report_text
from .session import calibration_bins, stats_from_events
from .simulate import EPOCH_TIMESTAMP, SimAgent, run_simulation, write_event_log
from .verification import (
    invariant_report_text,
    run_interval_gap_suite,
    run_invariant_suite,
    run_properness_suite,
)

EXIT_VERIFICATION_FAILURE = 1
EXIT_DATA_ERROR = 3


def _fail_data(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_DATA_ERROR)


@click.group()
def main() -> None:
    """Scoring rules and training tools for calibration practice."""


@main.command("score-choice")
@click.option("--p", type=float, required=True, help="stated confidence in the chosen answer")
@click.option("--correct/--incorrect", "correct", default=True, show_default=True)
@click.option("--n", type=int, required=True, help="number of answer options")
@click.option("--k", type=int, default=None, help="options selected (pick-k questions)")
@click.option("--p-max", type=float, default=CONFIDENCE_CAP_DEFAULT, show_default=True)
@click.option("--s-max", type=float, default=MAX_POINTS_DEFAULT, show_default=True)
def score_choice(p: float, correct: bool, n: int, k: int | None, p_max: float, s_max: float):
    """Score one choice prediction with the practical-log rule."""
    if n < 2:
        raise click.BadParameter("need at least 2 options", param_hint="--n")
    if k is not None and not 1 <= k < n:
        raise click.BadParameter(f"need 1 <= k < n, got k={k}, n={n}", param_hint="--k")
    if not 0.0 <= p <= 1.0:
        raise click.BadParameter(f"probability {p} outside [0, 1]", param_hint="--p")
    chance = (k / n) if k is not None else (1.0 / n)
    try:
        params = ChoiceScoringParams(max_points=s_max, confidence_cap=p_max, chance_level=chance)
        result = practical_log_choice_score(clamp_probability(p, params), correct, params)
    except ValueError as exc:
        _fail_data(str(exc))
    click.echo(f"points: {result.points!r}")
    click.echo(f"display: {display_points(result.points)}")


@main.command("score-interval")
@click.option("--rule", type=click.Choice(["distance", "magnitude", "linear", "log"]), required=True)
@click.option("--l", "lower", type=float, required=True)
@click.option("--u", "upper", type=float, required=True)
@click.option("--x", type=float, required=True, help="the true value")
@click.option("--beta", type=float, default=COVERAGE_DEFAULT, show_default=True)
@click.option("--c", "scale", type=float, default=None,
              help="scale; defaults to 100 (distance/linear) or ln(100) (magnitude/log)")
@click.option("--delta", type=float, default=EXPANSION_DEFAULT, show_default=True)
@click.option("--d", "offset", type=float, default=0.0, show_default=True)
@click.option("--s-max", type=float, default=MAX_POINTS_DEFAULT, show_default=True)
@click.option("--s-min", type=float, default=MIN_POINTS_DEFAULT, show_default=True)
@click.option("--raw", is_flag=True, help="score without boundary expansion or floor")
def score_interval(rule, lower, upper, x, beta, scale, delta, offset, s_max, s_min, raw):
    """Score one interval prediction."""
    if raw and rule in ("linear", "log"):
        raise click.BadParameter(f"--raw applies to distance/magnitude, not {rule}")
    if scale is None:
        scale = MAGNITUDE_SCALE_DEFAULT if rule in ("magnitude", "log") else DISTANCE_SCALE_DEFAULT
    try:
        params = IntervalScoringParams(
            scale=scale, offset=offset, max_points=s_max, min_points=s_min, expansion=delta
        )
        forecast = IntervalForecast(lower, upper, beta)
        if rule == "linear":
            points = linear_interval_score(x, forecast, params)
        elif rule == "log":
            points = log_interval_score(x, forecast, params)
        elif rule == "distance":
            points = dist_score_raw(x, forecast, params) if raw \
                else dist_score_final(x, forecast, params).points
        else:
            points = mag_score_raw(x, forecast, params) if raw \
                else mag_score_final(x, forecast, params).points
    except ValueError as exc:
        _fail_data(str(exc))
    click.echo(f"points: {points!r}")
    click.echo(f"display: {display_points(points)}")


@main.command()
@click.option("--suite", type=click.Choice(["properness", "interval-gap", "invariants"]),
              required=True)
@click.option("--json", "json_path", type=click.Path(path_type=Path), default=None,
              help="also write the report as JSON")
@click.option("--grid", type=int, default=200, show_default=True,
              help="interval-gap search grid points per axis")
@click.option("--no-timestamp", is_flag=True, help="omit the generated-at line (fixtures)")
def verify(suite: str, json_path: Path | None, grid: int, no_timestamp: bool):
    """Run a verification suite; exit 0 only if every expected property holds."""
    if suite == "properness":
        reports = run_properness_suite()
        text = properness_report_text(reports)
        results = [r.to_dict() for r in reports]
        passed = all(r.passed for r in reports)
    elif suite == "interval-gap":
        rows = run_interval_gap_suite(grid_count=grid)
        text = gap_table_text(rows)
        results = [r.to_dict() for r in rows]
        passed = all(r.passed for r in rows)
    else:
        checks = run_invariant_suite()
        text = invariant_report_text(checks)
        results = [c.to_dict() for c in checks]
        passed = all(c.passed for c in checks)

    if not no_timestamp:
        click.echo(f"generated at {datetime.now(timezone.utc).isoformat()}")
    click.echo(text)
    click.echo(f"suite {suite}: {'PASS' if passed else 'FAIL'}")
    if json_path is not None:
        report = {"suite": suite, "passed": passed, "results": results}
        if not no_timestamp:
            report["generated_at"] = datetime.now(timezone.utc).isoformat()
        json_path.write_text(json.dumps(report, indent=2), encoding="utf-8")
    sys.exit(0 if passed else EXIT_VERIFICATION_FAILURE)


@main.command()
@click.option("--deck", "deck_path", type=click.Path(path_type=Path), required=True)
@click.option("--agent", type=click.Choice(["calibrated", "overconfident", "underconfident", "random"]),
              default="calibrated", show_default=True)
@click.option("--n", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), required=True,
              help="where to write the event log (JSONL)")
@click.option("--no-timestamp", is_flag=True,
              help="stamp all events with the epoch for byte-identical logs")
def simulate(deck_path: Path, agent: str, n: int, seed: int, out: Path, no_timestamp: bool):
    """Play a deck with a simulated forecaster and write its event log."""
    try:
        deck = load_deck(deck_path.read_bytes())
        events = run_simulation(
            deck,
            SimAgent(kind=agent, seed=seed),
            n,
            fixed_timestamp=EPOCH_TIMESTAMP if no_timestamp else None,
        )
        write_event_log(events, out)
    except (OSError, DeckValidationError, ValueError) as exc:
        _fail_data(str(exc))

    stats = stats_from_events(events)
    click.echo(f"simulated {stats.predictions} predictions by a {agent} agent on {deck.id!r}")
    click.echo(f"total points: {stats.total_points:.6f}")
    click.echo(f"mean points:  {stats.mean_points:.6f}")
    click.echo("")
    header = f"{'confidence':<16}{'count':>7}{'mean conf':>11}{'freq correct':>14}"
    click.echo(header)
    click.echo("-" * len(header))
    for b in calibration_bins(events):
        mean_conf = f"{b.mean_confidence:.3f}" if b.mean_confidence is not None else "-"
        freq = f"{b.frequency_correct:.3f}" if b.frequency_correct is not None else "-"
        click.echo(f"[{b.lower:.2f}, {b.upper:.2f}) {b.count:>7}{mean_conf:>11}{freq:>14}")
    click.echo(f"\nevent log written to {out}")


@main.group()
def deck() -> None:
    """Validate and install question decks."""


@deck.command("validate")
@click.argument("path", type=click.Path(path_type=Path))
def deck_validate(path: Path):
    """Check a deck document; print per-question diagnostics on failure."""
    try:
        loaded = load_deck(path.read_bytes())
    except OSError as exc:
        _fail_data(str(exc))
    except DeckValidationError as exc:
        _fail_data(str(exc))
    click.echo(f"OK, {len(loaded.questions)} questions")


@deck.command("import")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--deck-dir", type=click.Path(path_type=Path), required=True,
              envvar="CALSCORE_DECK_DIR", help="server deck directory")
def deck_import(path: Path, deck_dir: Path):
    """Validate a deck and copy it into the server deck directory."""
    try:
        loaded = load_deck(path.read_bytes())
        deck_dir.mkdir(parents=True, exist_ok=True)
        target = deck_dir / path.name
        shutil.copyfile(path, target)
    except OSError as exc:
        _fail_data(str(exc))
    except DeckValidationError as exc:
        _fail_data(str(exc))
    click.echo(f"imported {loaded.id!r} ({len(loaded.questions)} questions) to {target}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, envvar="CALSCORE_HOST")
@click.option("--port", type=int, default=8000, show_default=True, envvar="CALSCORE_PORT")
@click.option("--deck-dir", type=click.Path(path_type=Path), required=True,
              envvar="CALSCORE_DECK_DIR")
@click.option("--data-dir", type=click.Path(path_type=Path), required=True,
              envvar="CALSCORE_DATA_DIR")
def serve(host: str, port: int, deck_dir: Path, data_dir: Path):
    """Run the HTTP API server."""
    import uvicorn

    from .api import create_app

    if not deck_dir.is_dir():
        _fail_data(f"deck directory {deck_dir} does not exist")
    uvicorn.run(create_app(deck_dir, data_dir), host=host, port=port)


if __name__ == "__main__":
    main()
