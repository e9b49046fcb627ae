"""Tests for the command-line interface."""

import json
from importlib import resources

import pytest
from click.testing import CliRunner

from calscore.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def deck_path(tmp_path, name="trivia_choice.json"):
    data = resources.files("calscore.decks").joinpath(name).read_bytes()
    target = tmp_path / name
    target.write_bytes(data)
    return target


def parse_points(output: str) -> float:
    for line in output.splitlines():
        if line.startswith("points:"):
            return float(line.split(":", 1)[1])
    raise AssertionError(f"no points line in {output!r}")


class TestScoreChoice:
    def test_even_odds_binary(self, runner):
        result = runner.invoke(main, ["score-choice", "--p", "0.5", "--n", "2"])
        assert result.exit_code == 0
        assert parse_points(result.output) == 0.0

    def test_confident_correct(self, runner):
        result = runner.invoke(main, ["score-choice", "--p", "0.99", "--correct", "--n", "2"])
        assert result.exit_code == 0
        assert parse_points(result.output) == pytest.approx(10.0, abs=1e-12)
        assert "display: 10" in result.output

    def test_incorrect_four_options(self, runner):
        result = runner.invoke(
            main, ["score-choice", "--p", "0.8", "--incorrect", "--n", "4"]
        )
        assert result.exit_code == 0
        # frozen from the high-precision oracle (chance level 1/4)
        assert parse_points(result.output) == pytest.approx(-9.604080495292084, abs=1e-9)

    def test_pick_k_chance_level(self, runner):
        result = runner.invoke(
            main, ["score-choice", "--p", "0.4", "--n", "5", "--k", "2"]
        )
        assert result.exit_code == 0
        assert parse_points(result.output) == 0.0

    def test_usage_errors_exit_two(self, runner):
        assert runner.invoke(main, ["score-choice", "--p", "0.5", "--n", "1"]).exit_code == 2
        assert runner.invoke(main, ["score-choice", "--p", "x", "--n", "2"]).exit_code == 2
        assert runner.invoke(main, ["score-choice", "--p", "1.5", "--n", "2"]).exit_code == 2


class TestScoreInterval:
    def test_distance_raw_midpoint(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "distance", "--raw",
            "--l", "0", "--u", "20", "--x", "10", "--beta", "0.9", "--c", "100",
        ])
        assert result.exit_code == 0
        assert parse_points(result.output) == pytest.approx(8 + 1 / 3, abs=1e-9)

    def test_magnitude_raw_geometric_mean(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "magnitude", "--raw",
            "--l", "10", "--u", "1000", "--x", "100",
        ])
        assert result.exit_code == 0
        assert parse_points(result.output) == pytest.approx(5.0, abs=1e-9)

    def test_magnitude_rejects_negative_bound(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "magnitude", "--l", "-5", "--u", "10", "--x", "3",
        ])
        assert result.exit_code == 3
        assert "positive" in result.output

    def test_final_distance_boundary_positive(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "distance", "--l", "10", "--u", "100", "--x", "10",
        ])
        assert result.exit_code == 0
        assert parse_points(result.output) == pytest.approx(0.09194716553130225, abs=1e-9)

    def test_linear_rule(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "linear", "--l", "10", "--u", "20", "--x", "25",
            "--c", "1",
        ])
        assert result.exit_code == 0
        assert parse_points(result.output) == pytest.approx(-5.5, abs=1e-9)

    def test_raw_flag_rejected_for_proper_rules(self, runner):
        result = runner.invoke(main, [
            "score-interval", "--rule", "linear", "--raw", "--l", "0", "--u", "1", "--x", "0.5",
        ])
        assert result.exit_code == 2


class TestVerify:
    def test_invariants_suite_passes(self, runner, tmp_path):
        report = tmp_path / "report.json"
        result = runner.invoke(main, [
            "verify", "--suite", "invariants", "--json", str(report), "--no-timestamp",
        ])
        assert result.exit_code == 0, result.output
        assert "suite invariants: PASS" in result.output
        payload = json.loads(report.read_text())
        assert payload["passed"] is True
        assert all(r["passed"] for r in payload["results"])

    def test_properness_suite_passes(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "properness", "--no-timestamp"])
        assert result.exit_code == 0, result.output
        assert "practical_log" in result.output

    def test_interval_gap_suite_passes_small_grid(self, runner, tmp_path):
        report = tmp_path / "gaps.json"
        result = runner.invoke(main, [
            "verify", "--suite", "interval-gap", "--grid", "50",
            "--json", str(report), "--no-timestamp",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads(report.read_text())
        by_rule = {row["rule_id"]: row for row in payload["results"]}
        assert by_rule["distance"]["gap"] > 0
        assert by_rule["magnitude"]["gap"] > 0
        assert by_rule["linear"]["gap"] <= 2e-6
        assert by_rule["log"]["gap"] <= 2e-6

    def test_unknown_suite_is_usage_error(self, runner):
        assert runner.invoke(main, ["verify", "--suite", "nope"]).exit_code == 2

    def test_no_timestamp_reports_are_identical(self, runner):
        args = ["verify", "--suite", "properness", "--no-timestamp"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output


class TestSimulateCommand:
    def test_writes_deterministic_event_log(self, runner, tmp_path):
        deck = deck_path(tmp_path)
        out_a = tmp_path / "a.jsonl"
        out_b = tmp_path / "b.jsonl"
        for out in (out_a, out_b):
            result = runner.invoke(main, [
                "simulate", "--deck", str(deck), "--agent", "calibrated",
                "--n", "60", "--seed", "9", "--out", str(out), "--no-timestamp",
            ])
            assert result.exit_code == 0, result.output
            assert "total points" in result.output
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_log_replays_through_session_tools(self, runner, tmp_path):
        deck = deck_path(tmp_path)
        out = tmp_path / "events.jsonl"
        runner.invoke(main, [
            "simulate", "--deck", str(deck), "--agent", "random",
            "--n", "30", "--seed", "1", "--out", str(out),
        ])
        from calscore import replay

        stats = replay(out)
        assert stats.predictions == 30
        assert abs(stats.total_points) < 1e-9

    def test_interval_deck_is_data_error(self, runner, tmp_path):
        deck = deck_path(tmp_path, "history_distance.json")
        result = runner.invoke(main, [
            "simulate", "--deck", str(deck), "--n", "5",
            "--out", str(tmp_path / "x.jsonl"),
        ])
        assert result.exit_code == 3


class TestDeckCommands:
    def test_validate_ok(self, runner, tmp_path):
        result = runner.invoke(main, ["deck", "validate", str(deck_path(tmp_path))])
        assert result.exit_code == 0
        assert result.output.strip() == "OK, 7 questions"

    def test_validate_duplicate_id_diagnostic(self, runner, tmp_path):
        doc = {
            "id": "d", "title": "t", "scoring_rule": "practical_log",
            "questions": [
                {"id": "q", "kind": "true_false", "prompt": "a?", "answer": True},
                {"id": "q", "kind": "true_false", "prompt": "b?", "answer": False},
            ],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        result = runner.invoke(main, ["deck", "validate", str(path)])
        assert result.exit_code == 3
        assert "duplicate" in result.output and "'q'" in result.output

    def test_validate_nonpositive_magnitude_diagnostic(self, runner, tmp_path):
        doc = {
            "id": "d", "title": "t", "scoring_rule": "magnitude",
            "questions": [{"id": "q", "kind": "interval_magnitude",
                           "prompt": "n?", "true_value": -3}],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        result = runner.invoke(main, ["deck", "validate", str(path)])
        assert result.exit_code == 3
        assert "positive" in result.output

    def test_validate_missing_file_is_data_error(self, runner, tmp_path):
        result = runner.invoke(main, ["deck", "validate", str(tmp_path / "missing.json")])
        assert result.exit_code == 3

    def test_import_copies_into_deck_dir(self, runner, tmp_path):
        deck = deck_path(tmp_path)
        deck_dir = tmp_path / "served"
        result = runner.invoke(main, [
            "deck", "import", str(deck), "--deck-dir", str(deck_dir),
        ])
        assert result.exit_code == 0
        assert (deck_dir / deck.name).exists()
