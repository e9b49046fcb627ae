"""Tests for the event-sourced session store."""

import json
from importlib import resources

import pytest

from calscore import (
    ChoicePrediction,
    IntervalPrediction,
    SessionStore,
    load_deck,
    replay,
)
from calscore.session import (
    DuplicateAnswerError,
    ReplayError,
    UnknownQuestionError,
    UnknownSessionError,
    calibration_bins,
    stats_from_events,
)


def sample_deck(name: str):
    return load_deck(resources.files("calscore.decks").joinpath(name).read_bytes())


@pytest.fixture
def trivia():
    return sample_deck("trivia_choice.json")


@pytest.fixture
def store(tmp_path):
    return SessionStore(tmp_path / "data")


class TestRecordPrediction:
    def test_confident_correct_binary_scores_max(self, store, trivia):
        sid = store.create_session(trivia)
        event = store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.99))
        assert event.points == pytest.approx(10.0, abs=1e-12)
        assert event.correct is True
        assert event.clamped_confidence == 0.99

    def test_even_odds_scores_zero(self, store, trivia):
        sid = store.create_session(trivia)
        event = store.record_prediction(sid, "tf-oceans", ChoicePrediction(False, 0.5))
        assert event.points == 0.0
        assert event.correct is False

    def test_confidence_clamped_before_scoring(self, store, trivia):
        sid = store.create_session(trivia)
        event = store.record_prediction(sid, "tf-venus", ChoicePrediction(True, 0.3))
        assert event.clamped_confidence == 0.5
        assert event.points == 0.0

    def test_interval_near_midpoint_scores_high(self, store):
        deck = sample_deck("history_distance.json")
        sid = store.create_session(deck)
        event = store.record_prediction(
            sid, "year-spaceflight", IntervalPrediction(1960, 1962)
        )
        assert event.true_value == 1961
        assert event.points > 9.0
        assert event.correct is None

    def test_magnitude_question_rejects_nonpositive_bounds(self, store):
        deck = sample_deck("quantities_magnitude.json")
        sid = store.create_session(deck)
        with pytest.raises(ValueError, match="positive"):
            store.record_prediction(sid, "moon-distance", IntervalPrediction(-5, 10))

    def test_duplicate_answer_rejected(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.7))
        with pytest.raises(DuplicateAnswerError):
            store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.8))

    def test_unknown_ids_rejected(self, store, trivia):
        with pytest.raises(UnknownSessionError):
            store.record_prediction("nope", "tf-oceans", ChoicePrediction(True, 0.7))
        sid = store.create_session(trivia)
        with pytest.raises(UnknownQuestionError):
            store.record_prediction(sid, "missing", ChoicePrediction(True, 0.7))

    def test_wrong_prediction_shape_rejected(self, store, trivia):
        sid = store.create_session(trivia)
        with pytest.raises(ValueError, match="choice"):
            store.record_prediction(sid, "tf-oceans", IntervalPrediction(0, 1))


class TestEventSourcing:
    def test_append_then_replay_matches_memory_after_every_operation(self, store, trivia):
        sid = store.create_session(trivia)
        log = store.data_dir / f"{sid}.events.jsonl"
        answers = [
            ("tf-oceans", ChoicePrediction(True, 0.9)),
            ("pick-planet", ChoicePrediction(0, 0.6)),
            ("num-hexagon", ChoicePrediction(5, 0.75)),
        ]
        for qid, prediction in answers:
            store.record_prediction(sid, qid, prediction)
            assert replay(log).to_dict() == store.stats(sid).to_dict()

    def test_replay_is_idempotent(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.9))
        store.record_prediction(sid, "tf-venus", ChoicePrediction(False, 0.8))
        log = store.data_dir / f"{sid}.events.jsonl"
        assert replay(log) == replay(log)

    def test_empty_log_gives_zeroed_stats(self, store, trivia):
        sid = store.create_session(trivia)
        stats = replay(store.data_dir / f"{sid}.events.jsonl")
        assert stats.predictions == 0
        assert stats.total_points == 0.0
        assert stats.mean_points is None

    def test_total_is_sum_of_event_points(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.85))
        store.record_prediction(sid, "pick-bone", ChoicePrediction(1, 0.4))
        events = store.events(sid)
        stats = store.stats(sid)
        assert stats.total_points == pytest.approx(sum(e.points for e in events), abs=1e-9)
        assert stats.mean_points == pytest.approx(stats.total_points / 2, abs=1e-12)

    def test_corrupt_line_reports_line_number(self, store, trivia, tmp_path):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.9))
        log = store.data_dir / f"{sid}.events.jsonl"
        log.write_text(log.read_text() + "{broken\n", encoding="utf-8")
        with pytest.raises(ReplayError, match="line 2"):
            replay(log)

    def test_reload_from_disk_restores_state(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.9))
        fresh = SessionStore(store.data_dir)
        fresh.load_sessions({trivia.id: trivia})
        assert fresh.stats(sid).to_dict() == store.stats(sid).to_dict()
        with pytest.raises(DuplicateAnswerError):
            fresh.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.7))

    def test_event_log_is_rfc3339_json_lines(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.9))
        line = (store.data_dir / f"{sid}.events.jsonl").read_text().strip()
        record = json.loads(line)
        assert set(record) >= {"timestamp", "session_id", "question_id", "prediction", "points"}
        from datetime import datetime

        datetime.fromisoformat(record["timestamp"])  # parses as RFC 3339


class TestSessionFlow:
    def test_next_question_walks_deck_order(self, store, trivia):
        sid = store.create_session(trivia)
        first = store.next_question(sid)
        assert first.id == trivia.questions[0].id
        store.record_prediction(sid, first.id, ChoicePrediction(True, 0.7))
        assert store.next_question(sid).id == trivia.questions[1].id

    def test_seeded_shuffle_is_reproducible(self, store, trivia):
        a = store.create_session(trivia, seed=7)
        b = store.create_session(trivia, seed=7)
        assert store.next_question(a).id == store.next_question(b).id

    def test_sessions_are_independent(self, store, trivia):
        a = store.create_session(trivia)
        b = store.create_session(trivia)
        store.record_prediction(a, "tf-oceans", ChoicePrediction(True, 0.9))
        assert store.stats(b).predictions == 0


class TestCalibrationBins:
    def test_direct_count(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.6))
        store.record_prediction(sid, "tf-venus", ChoicePrediction(False, 0.6))
        bins = store.calibration_curve(sid, [0.55, 0.65])
        assert len(bins) == 1
        assert bins[0].count == 2
        assert bins[0].frequency_correct == pytest.approx(0.5)
        assert bins[0].mean_confidence == pytest.approx(0.6)

    def test_empty_session_gives_zero_counts(self, store, trivia):
        sid = store.create_session(trivia)
        bins = store.calibration_curve(sid)
        assert all(b.count == 0 for b in bins)
        assert all(b.frequency_correct is None for b in bins)

    def test_full_range_edges_partition_events(self, store, trivia):
        sid = store.create_session(trivia)
        for qid, conf in (("tf-oceans", 0.5), ("tf-venus", 0.74),
                          ("pick-planet", 0.99), ("pick-bone", 0.3)):
            selection = True if qid.startswith("tf") else 0
            store.record_prediction(sid, qid, ChoicePrediction(selection, conf))
        bins = store.calibration_curve(sid, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert sum(b.count for b in bins) == 4

    def test_interval_events_do_not_enter_curve(self, store):
        deck = sample_deck("history_distance.json")
        sid = store.create_session(deck)
        store.record_prediction(sid, "pct-water", IntervalPrediction(60, 80))
        assert all(b.count == 0 for b in store.calibration_curve(sid))

    def test_invalid_edges_rejected(self, store, trivia):
        sid = store.create_session(trivia)
        with pytest.raises(ValueError, match="increasing"):
            store.calibration_curve(sid, [0.5, 0.5])
        with pytest.raises(ValueError, match="within"):
            store.calibration_curve(sid, [0.5, 1.5])

    def test_boundary_lands_in_upper_bin_except_last_edge(self):
        from calscore.session import PredictionEvent

        def choice_event(conf, correct):
            return PredictionEvent(
                timestamp="1970-01-01T00:00:00+00:00", session_id="s", question_id="q",
                prediction={"selection": True, "confidence": conf},
                points=0.0, clamped_confidence=conf, correct=correct,
            )

        bins = calibration_bins(
            [choice_event(0.65, True), choice_event(1.0, True)], [0.55, 0.65, 1.0]
        )
        assert bins[0].count == 0
        assert bins[1].count == 2


class TestIntervalHitRate:
    def test_supplementary_coverage_statistic(self, store):
        deck = sample_deck("history_distance.json")
        sid = store.create_session(deck)
        store.record_prediction(sid, "year-spaceflight", IntervalPrediction(1950, 1970))
        store.record_prediction(sid, "pct-water", IntervalPrediction(90, 95))
        stats = store.stats(sid)
        assert stats.interval_hit_rate == pytest.approx(0.5)
        assert stats.by_kind["interval"].count == 2

    def test_absent_for_choice_only_sessions(self, store, trivia):
        sid = store.create_session(trivia)
        store.record_prediction(sid, "tf-oceans", ChoicePrediction(True, 0.7))
        assert store.stats(sid).interval_hit_rate is None
        assert stats_from_events(store.events(sid)).by_kind["choice"].count == 1
