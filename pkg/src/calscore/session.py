"""Event-sourced training sessions.

Every scored prediction is appended to a per-session JSON-lines log, one
object per line, and all derived state (totals, calibration bins) is a pure
function of that log: replaying it reproduces the in-memory view exactly.
"""

from __future__ import annotations

import json
import random
import threading
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from .choice import clamp_probability, practical_log_choice_score
from .deck import Deck, ChoicePrediction, IntervalPrediction, Question, grade_choice
from .intervals import dist_score_final, mag_score_final
from .params import IntervalForecast, ScoreResult

# Confidence-slider bins for two-option decks, where stated confidence runs
# from 50% to 99%.  Fully configurable per call.
DEFAULT_BIN_EDGES = (0.5, 0.55, 0.65, 0.75, 0.85, 0.95, 1.0)


class SessionError(Exception):
    """Base error for session operations."""


class UnknownSessionError(SessionError):
    pass


class UnknownQuestionError(SessionError):
    pass


class DuplicateAnswerError(SessionError):
    """A question was already answered in this session."""


class ReplayError(SessionError):
    """An event log line could not be parsed."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        super().__init__(f"corrupt event log at line {line_number}: {reason}")


@dataclass(frozen=True)
class PredictionEvent:
    """One scored prediction.  Choice events carry ``clamped_confidence`` and
    ``correct``; interval events carry ``true_value``."""

    timestamp: str
    session_id: str
    question_id: str
    prediction: dict
    points: float
    clamped_confidence: float | None = None
    correct: bool | None = None
    true_value: float | None = None

    @property
    def is_choice(self) -> bool:
        return self.correct is not None

    def to_json_line(self) -> str:
        payload = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(payload, ensure_ascii=False)


@dataclass(frozen=True)
class CalibrationBin:
    """Aggregated outcomes for predictions whose stated confidence fell in
    [lower, upper).  ``frequency_correct`` and ``mean_confidence`` are None
    for empty bins."""

    lower: float
    upper: float
    count: int
    frequency_correct: float | None
    mean_confidence: float | None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class KindStats:
    count: int
    total_points: float


@dataclass(frozen=True)
class SessionStats:
    total_points: float
    predictions: int
    mean_points: float | None
    by_kind: dict[str, KindStats] = field(default_factory=dict)
    interval_hit_rate: float | None = None

    def to_dict(self) -> dict:
        return {
            "total_points": self.total_points,
            "predictions": self.predictions,
            "mean_points": self.mean_points,
            "by_kind": {k: asdict(v) for k, v in self.by_kind.items()},
            "interval_hit_rate": self.interval_hit_rate,
        }


def score_prediction(
    deck: Deck, question: Question, prediction: ChoicePrediction | IntervalPrediction
) -> tuple[ScoreResult, float | None, bool | None]:
    """Grade and score one prediction under the deck's rule.

    Returns (score, clamped_confidence, correct); the last two are None for
    interval questions.
    """
    if deck.scoring_rule == "practical_log":
        if not isinstance(prediction, ChoicePrediction):
            raise ValueError(f"question {question.id!r} expects a choice prediction")
        correct = grade_choice(question, prediction)
        params = deck.choice_params(question)
        clamped = clamp_probability(prediction.confidence, params)
        return practical_log_choice_score(clamped, correct, params), clamped, correct

    if not isinstance(prediction, IntervalPrediction):
        raise ValueError(f"question {question.id!r} expects an interval prediction")
    params = deck.interval_params()
    coverage = deck.coverage_for(question)
    forecast = IntervalForecast(prediction.lower, prediction.upper, coverage)
    if deck.scoring_rule == "magnitude":
        if prediction.lower <= 0:
            raise ValueError("interval bounds must be positive for magnitude scoring")
        result = mag_score_final(question.true_value, forecast, params)
    else:
        result = dist_score_final(question.true_value, forecast, params)
    return result, None, None


def build_event(
    deck: Deck,
    question: Question,
    prediction: ChoicePrediction | IntervalPrediction,
    session_id: str,
    timestamp: str | None = None,
) -> PredictionEvent:
    """Score a prediction and package it as a log event."""
    result, clamped, correct = score_prediction(deck, question, prediction)
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat()
    if isinstance(prediction, ChoicePrediction):
        payload = {"selection": prediction.selection, "confidence": prediction.confidence}
        return PredictionEvent(
            timestamp=timestamp,
            session_id=session_id,
            question_id=question.id,
            prediction=payload,
            points=result.points,
            clamped_confidence=clamped,
            correct=correct,
        )
    payload = {"lower": prediction.lower, "upper": prediction.upper}
    return PredictionEvent(
        timestamp=timestamp,
        session_id=session_id,
        question_id=question.id,
        prediction=payload,
        points=result.points,
        true_value=question.true_value,
    )


def parse_event(line: str, line_number: int = 0) -> PredictionEvent:
    try:
        raw = json.loads(line)
        return PredictionEvent(
            timestamp=raw["timestamp"],
            session_id=raw["session_id"],
            question_id=raw["question_id"],
            prediction=raw["prediction"],
            points=float(raw["points"]),
            clamped_confidence=raw.get("clamped_confidence"),
            correct=raw.get("correct"),
            true_value=raw.get("true_value"),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ReplayError(line_number, str(exc)) from exc


def read_event_log(lines: Iterable[str]) -> list[PredictionEvent]:
    """Parse a JSONL event stream, reporting the line number on corruption."""
    events = []
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        events.append(parse_event(line, i))
    return events


def stats_from_events(events: Sequence[PredictionEvent]) -> SessionStats:
    total = 0.0
    by_kind: dict[str, list[float]] = {}
    hits = 0
    intervals = 0
    for ev in events:
        total += ev.points
        kind = "choice" if ev.is_choice else "interval"
        by_kind.setdefault(kind, []).append(ev.points)
        if not ev.is_choice:
            intervals += 1
            if ev.prediction["lower"] <= ev.true_value <= ev.prediction["upper"]:
                hits += 1
    n = len(events)
    return SessionStats(
        total_points=total,
        predictions=n,
        mean_points=(total / n) if n else None,
        by_kind={k: KindStats(len(v), sum(v)) for k, v in by_kind.items()},
        # Supplementary statistic: how often interval predictions contained
        # the true value (comparable to the stated coverage level).
        interval_hit_rate=(hits / intervals) if intervals else None,
    )


def replay(source: Path | str | Iterable[str]) -> SessionStats:
    """Rebuild session statistics from an event log; deterministic and
    idempotent."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            events = read_event_log(fh)
    else:
        events = read_event_log(source)
    return stats_from_events(events)


def calibration_bins(
    events: Sequence[PredictionEvent], edges: Sequence[float] | None = None
) -> list[CalibrationBin]:
    """Bucket choice predictions by clamped stated confidence.

    Bin i covers [edges[i], edges[i+1]) with the final bin closed on the
    right.  Events outside the overall range are not counted.
    """
    if edges is None:
        edges = DEFAULT_BIN_EDGES
    edges = [float(e) for e in edges]
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError("bin edges must be strictly increasing")
    if edges[0] < 0.0 or edges[-1] > 1.0:
        raise ValueError("bin edges must lie within [0, 1]")

    confidences: list[list[float]] = [[] for _ in range(len(edges) - 1)]
    corrects: list[int] = [0] * (len(edges) - 1)
    for ev in events:
        if not ev.is_choice:
            continue
        p = ev.clamped_confidence
        if p is None or p < edges[0] or p > edges[-1]:
            continue
        idx = len(edges) - 2 if p == edges[-1] else max(
            i for i in range(len(edges) - 1) if edges[i] <= p
        )
        confidences[idx].append(p)
        corrects[idx] += int(ev.correct)

    bins = []
    for i in range(len(edges) - 1):
        count = len(confidences[i])
        bins.append(
            CalibrationBin(
                lower=edges[i],
                upper=edges[i + 1],
                count=count,
                frequency_correct=(corrects[i] / count) if count else None,
                mean_confidence=(sum(confidences[i]) / count) if count else None,
            )
        )
    return bins


@dataclass
class _SessionState:
    session_id: str
    deck: Deck
    order: list[str]
    events: list[PredictionEvent] = field(default_factory=list)
    answered: set[str] = field(default_factory=set)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Sessions persisted as one meta file plus one append-only event log
    each.  A single logical writer per session; reads are unrestricted."""

    def __init__(self, data_dir: Path | str):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, _SessionState] = {}

    def _log_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.events.jsonl"

    def _meta_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.meta.json"

    def create_session(self, deck: Deck, seed: int | None = None) -> str:
        session_id = uuid.uuid4().hex
        order = [q.id for q in deck.questions]
        if seed is not None:
            random.Random(seed).shuffle(order)
        self._meta_path(session_id).write_text(
            json.dumps({"session_id": session_id, "deck_id": deck.id, "order": order}),
            encoding="utf-8",
        )
        self._log_path(session_id).touch()
        self._sessions[session_id] = _SessionState(session_id, deck, order)
        return session_id

    def load_sessions(self, decks: dict[str, Deck]) -> None:
        """Rebuild all session state from disk by replaying event logs."""
        for meta_path in sorted(self.data_dir.glob("*.meta.json")):
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            deck = decks.get(meta["deck_id"])
            if deck is None:
                continue
            state = _SessionState(meta["session_id"], deck, list(meta["order"]))
            log = self._log_path(state.session_id)
            if log.exists():
                with open(log, encoding="utf-8") as fh:
                    state.events = read_event_log(fh)
                state.answered = {ev.question_id for ev in state.events}
            self._sessions[state.session_id] = state

    def session_ids(self) -> list[str]:
        return sorted(self._sessions)

    def _state(self, session_id: str) -> _SessionState:
        state = self._sessions.get(session_id)
        if state is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        return state

    def deck_for(self, session_id: str) -> Deck:
        return self._state(session_id).deck

    def next_question(self, session_id: str) -> Question | None:
        state = self._state(session_id)
        for qid in state.order:
            if qid not in state.answered:
                return state.deck.question(qid)
        return None

    def progress(self, session_id: str) -> tuple[int, int]:
        state = self._state(session_id)
        return len(state.answered), len(state.order)

    def record_prediction(
        self,
        session_id: str,
        question_id: str,
        prediction: ChoicePrediction | IntervalPrediction,
    ) -> PredictionEvent:
        """Grade, clamp, score, and append atomically; the log line is
        durable before the in-memory view updates."""
        state = self._state(session_id)
        try:
            question = state.deck.question(question_id)
        except KeyError:
            raise UnknownQuestionError(
                f"no question {question_id!r} in deck {state.deck.id!r}"
            ) from None
        with state.lock:
            if question_id in state.answered:
                raise DuplicateAnswerError(
                    f"question {question_id!r} already answered in this session"
                )
            event = build_event(state.deck, question, prediction, session_id)
            with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
                fh.write(event.to_json_line() + "\n")
            state.events.append(event)
            state.answered.add(question_id)
        return event

    def events(self, session_id: str) -> list[PredictionEvent]:
        return list(self._state(session_id).events)

    def stats(self, session_id: str) -> SessionStats:
        return stats_from_events(self._state(session_id).events)

    def calibration_curve(
        self, session_id: str, edges: Sequence[float] | None = None
    ) -> list[CalibrationBin]:
        return calibration_bins(self._state(session_id).events, edges)
