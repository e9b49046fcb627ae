"""JSON-over-HTTP facade for decks, sessions, scoring, and statistics.

The service is stateless above the session store: every response is derived
from the deck files and the append-only event logs, so restarting the process
and replaying the logs yields identical answers.

Error bodies always carry a ``code`` from ERROR_CODES plus a human message.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .deck import (
    CHOICE_KINDS,
    ChoicePrediction,
    Deck,
    DeckValidationError,
    IntervalPrediction,
    Question,
    derive_p_rand,
    load_deck,
)
from .params import display_points
from .session import (
    DuplicateAnswerError,
    SessionStore,
    UnknownQuestionError,
    UnknownSessionError,
)

ERROR_CODES = frozenset(
    {
        "deck_not_found",
        "session_not_found",
        "question_not_found",
        "duplicate_answer",
        "invalid_prediction",
        "invalid_interval",
        "invalid_edges",
        "invalid_request",
    }
)


class ApiError(Exception):
    """Error with a machine code from the documented closed set."""

    def __init__(self, status: int, code: str, message: str, detail=None):
        assert code in ERROR_CODES, code
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


class CreateSessionRequest(BaseModel):
    deck_id: str
    seed: int | None = None


class AnswerRequest(BaseModel):
    question_id: str
    prediction: dict


def _question_payload(deck: Deck, question: Question) -> dict:
    """Client view of a question: grading data (answers) stays server-side."""
    payload = {
        "id": question.id,
        "kind": question.kind,
        "prompt": question.prompt,
    }
    if question.options is not None:
        payload["options"] = list(question.options)
    if question.k is not None:
        payload["k"] = question.k
    if question.kind in CHOICE_KINDS:
        payload["n"] = question.n
        payload["p_rand"] = derive_p_rand(question)
        payload["p_max"] = deck.confidence_cap()
    else:
        payload["beta"] = deck.coverage_for(question)
    return payload


def _parse_prediction(question: Question, raw: dict):
    if question.kind in CHOICE_KINDS:
        if "selection" not in raw or "confidence" not in raw:
            raise ApiError(
                400, "invalid_prediction",
                "choice predictions need 'selection' and 'confidence'",
            )
        selection = raw["selection"]
        if question.kind == "choose_k_of_n" and isinstance(selection, list):
            selection = [int(v) for v in selection]
        try:
            return ChoicePrediction(selection=selection, confidence=float(raw["confidence"]))
        except (TypeError, ValueError) as exc:
            raise ApiError(400, "invalid_prediction", str(exc)) from exc
    if "lower" not in raw or "upper" not in raw:
        raise ApiError(400, "invalid_interval", "interval predictions need 'lower' and 'upper'")
    try:
        prediction = IntervalPrediction(lower=float(raw["lower"]), upper=float(raw["upper"]))
    except (TypeError, ValueError) as exc:
        raise ApiError(400, "invalid_interval", str(exc)) from exc
    if question.kind == "interval_magnitude" and prediction.lower <= 0:
        raise ApiError(
            400, "invalid_interval",
            "interval bounds must be positive for magnitude scoring",
        )
    return prediction


def load_deck_directory(deck_dir: Path) -> tuple[dict[str, Deck], list[str]]:
    """Load every ``*.json`` deck, skipping (and reporting) malformed ones."""
    decks: dict[str, Deck] = {}
    warnings: list[str] = []
    for path in sorted(deck_dir.glob("*.json")):
        try:
            deck = load_deck(path.read_bytes())
        except DeckValidationError as exc:
            warnings.append(f"skipped {path.name}: {exc}")
            continue
        if deck.id in decks:
            warnings.append(f"skipped {path.name}: duplicate deck id {deck.id!r}")
            continue
        decks[deck.id] = deck
    return decks, warnings


def create_app(deck_dir: Path | str, data_dir: Path | str) -> FastAPI:
    deck_dir = Path(deck_dir)
    data_dir = Path(data_dir)
    decks, warnings = load_deck_directory(deck_dir)
    store = SessionStore(data_dir)
    store.load_sessions(decks)

    app = FastAPI(title="calscore", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message}
        if exc.detail is not None:
            body["detail"] = exc.detail
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "code": "invalid_request",
                "message": "request body failed validation",
                "detail": exc.errors(),
            },
        )

    def get_deck(deck_id: str) -> Deck:
        deck = decks.get(deck_id)
        if deck is None:
            raise ApiError(404, "deck_not_found", f"no deck {deck_id!r}")
        return deck

    def get_session_deck(session_id: str) -> Deck:
        try:
            return store.deck_for(session_id)
        except UnknownSessionError as exc:
            raise ApiError(404, "session_not_found", str(exc)) from exc

    @app.get("/decks")
    def list_decks():
        return [
            {
                "id": deck.id,
                "title": deck.title,
                "question_count": len(deck.questions),
                "scoring_rule": deck.scoring_rule,
            }
            for deck in sorted(decks.values(), key=lambda d: d.id)
        ]

    @app.post("/sessions")
    def create_session(body: CreateSessionRequest):
        deck = get_deck(body.deck_id)
        session_id = store.create_session(deck, seed=body.seed)
        return {"session_id": session_id, "deck_id": deck.id}

    @app.get("/sessions/{session_id}/next")
    def next_question(session_id: str):
        deck = get_session_deck(session_id)
        question = store.next_question(session_id)
        answered, total = store.progress(session_id)
        return {
            "question": _question_payload(deck, question) if question else None,
            "answered": answered,
            "total": total,
            "done": question is None,
        }

    @app.post("/sessions/{session_id}/answers")
    def submit_answer(session_id: str, body: AnswerRequest):
        deck = get_session_deck(session_id)
        try:
            question = deck.question(body.question_id)
        except KeyError:
            raise ApiError(
                404, "question_not_found",
                f"no question {body.question_id!r} in deck {deck.id!r}",
            ) from None
        prediction = _parse_prediction(question, body.prediction)
        try:
            event = store.record_prediction(session_id, body.question_id, prediction)
        except DuplicateAnswerError as exc:
            raise ApiError(409, "duplicate_answer", str(exc)) from exc
        except UnknownQuestionError as exc:
            raise ApiError(404, "question_not_found", str(exc)) from exc
        except ValueError as exc:
            code = "invalid_interval" if isinstance(prediction, IntervalPrediction) else "invalid_prediction"
            raise ApiError(400, code, str(exc)) from exc
        return {
            "event": {
                "timestamp": event.timestamp,
                "session_id": event.session_id,
                "question_id": event.question_id,
                "prediction": event.prediction,
                "points": event.points,
                "clamped_confidence": event.clamped_confidence,
                "correct": event.correct,
                "true_value": event.true_value,
            },
            "points": event.points,
            "points_display": display_points(event.points),
            "correct": event.correct,
            "true_value": event.true_value,
        }

    @app.get("/sessions/{session_id}/stats")
    def session_stats(session_id: str):
        get_session_deck(session_id)
        return store.stats(session_id).to_dict()

    @app.get("/sessions/{session_id}/calibration")
    def session_calibration(session_id: str, edges: str | None = None):
        get_session_deck(session_id)
        parsed = None
        if edges is not None:
            try:
                parsed = [float(v) for v in edges.split(",") if v != ""]
            except ValueError as exc:
                raise ApiError(400, "invalid_edges", f"cannot parse edges: {edges!r}") from exc
        try:
            bins = store.calibration_curve(session_id, parsed)
        except ValueError as exc:
            raise ApiError(400, "invalid_edges", str(exc)) from exc
        return {"bins": [b.to_dict() for b in bins]}

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "decks_loaded": len(decks),
            "warnings": warnings,
        }

    return app
