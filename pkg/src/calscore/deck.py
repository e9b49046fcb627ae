"""Question decks: loading, validation, serialization, and answer grading.

A deck is a UTF-8 JSON document binding questions to one scoring rule:

    {"id": ..., "title": ..., "scoring_rule": "practical_log"|"distance"|"magnitude",
     "params": {...optional overrides...},
     "questions": [{"id", "kind", "prompt", "options"?, "k"?, "answer"?,
                    "acceptable"?, "true_value"?, "beta"?, "p_rand"?}]}

Recognized ``params`` overrides: s_max, p_max, s_min, c, d, delta, beta.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, BinaryIO

from .params import (
    CONFIDENCE_CAP_DEFAULT,
    COVERAGE_DEFAULT,
    ChoiceScoringParams,
    IntervalScoringParams,
    MAGNITUDE_SCALE_DEFAULT,
)

CHOICE_KINDS = frozenset(
    {"true_false", "choose_1_of_n", "choose_k_of_n", "free_text", "numeric_exact"}
)
INTERVAL_KINDS = frozenset({"interval_distance", "interval_magnitude"})
QUESTION_KINDS = CHOICE_KINDS | INTERVAL_KINDS

# Kinds with no finite option list: the deck must state the chance level.
OPEN_ENDED_KINDS = frozenset({"free_text", "numeric_exact"})

RULE_KINDS = {
    "practical_log": CHOICE_KINDS,
    "distance": frozenset({"interval_distance"}),
    "magnitude": frozenset({"interval_magnitude"}),
}

PARAM_OVERRIDE_KEYS = frozenset({"s_max", "p_max", "s_min", "c", "d", "delta", "beta"})


class DeckValidationError(ValueError):
    """A deck document failed schema or invariant checks."""

    def __init__(self, message: str, question_id: str | None = None):
        self.question_id = question_id
        if question_id is not None:
            message = f"question {question_id!r}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Question:
    id: str
    kind: str
    prompt: str
    options: tuple[str, ...] | None = None
    k: int | None = None
    answer: bool | int | float | None = None
    acceptable: tuple[str, ...] | None = None
    true_value: float | None = None
    beta: float | None = None
    p_rand: float | None = None

    @property
    def n(self) -> int | None:
        """Number of options the forecaster chooses among."""
        if self.kind == "true_false":
            return 2
        if self.options is not None:
            return len(self.options)
        return None


@dataclass(frozen=True)
class ChoicePrediction:
    """An answer to a choice question plus the stated confidence in it."""

    selection: Any
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")


@dataclass(frozen=True)
class IntervalPrediction:
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


@dataclass(frozen=True)
class Deck:
    id: str
    title: str
    scoring_rule: str
    params: dict[str, float] = field(default_factory=dict)
    questions: tuple[Question, ...] = ()

    def question(self, question_id: str) -> Question:
        for q in self.questions:
            if q.id == question_id:
                return q
        raise KeyError(question_id)

    def confidence_cap(self) -> float:
        return self.params.get("p_max", CONFIDENCE_CAP_DEFAULT)

    def choice_params(self, question: Question) -> ChoiceScoringParams:
        kwargs: dict[str, float] = {
            "chance_level": derive_p_rand(question),
            "confidence_cap": self.confidence_cap(),
        }
        if "s_max" in self.params:
            kwargs["max_points"] = self.params["s_max"]
        return ChoiceScoringParams(**kwargs)

    def interval_params(self) -> IntervalScoringParams:
        kwargs: dict[str, float] = {}
        if "c" in self.params:
            kwargs["scale"] = self.params["c"]
        elif self.scoring_rule == "magnitude":
            kwargs["scale"] = MAGNITUDE_SCALE_DEFAULT
        for key, name in (("d", "offset"), ("s_max", "max_points"),
                          ("s_min", "min_points"), ("delta", "expansion")):
            if key in self.params:
                kwargs[name] = self.params[key]
        return IntervalScoringParams(**kwargs)

    def coverage_for(self, question: Question) -> float:
        if question.beta is not None:
            return question.beta
        return self.params.get("beta", COVERAGE_DEFAULT)


def derive_p_rand(question: Question) -> float:
    """Probability of answering correctly by guessing uniformly at random.

    1/2 for true/false, 1/n for pick-one, k/n for pick-k; open-ended kinds
    have no uniform guess, so the deck author must state a chance level.
    """
    if question.kind == "true_false":
        return 0.5
    if question.kind == "choose_1_of_n":
        return 1.0 / question.n
    if question.kind == "choose_k_of_n":
        return question.k / question.n
    if question.kind in OPEN_ENDED_KINDS:
        if question.p_rand is None:
            raise DeckValidationError(
                f"{question.kind} requires an explicit p_rand", question.id
            )
        return question.p_rand
    raise DeckValidationError(f"no chance level for kind {question.kind!r}", question.id)


def _normalize_text(text: str) -> str:
    return text.strip().lower()


def grade_choice(question: Question, prediction: ChoicePrediction) -> bool:
    """Grade an answer against the question's grading rule.

    Free text matches case-insensitively after trimming whitespace; numeric
    answers must match exactly after parsing.
    """
    sel = prediction.selection
    kind = question.kind
    if kind == "true_false":
        if not isinstance(sel, bool):
            raise ValueError(f"true_false expects a boolean selection, got {sel!r}")
        return sel == question.answer
    if kind == "choose_1_of_n":
        if not isinstance(sel, int) or isinstance(sel, bool) or not 0 <= sel < question.n:
            raise ValueError(f"choose_1_of_n expects an option index in [0, {question.n})")
        return sel == question.answer
    if kind == "choose_k_of_n":
        if not isinstance(sel, (list, tuple)):
            raise ValueError("choose_k_of_n expects a list of option indices")
        indices = set()
        for v in sel:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < question.n:
                raise ValueError(f"choose_k_of_n expects option indices in [0, {question.n})")
            indices.add(v)
        if len(indices) != question.k:
            raise ValueError(f"choose_k_of_n expects exactly {question.k} distinct indices")
        return question.answer in indices
    if kind == "free_text":
        if not isinstance(sel, str):
            raise ValueError("free_text expects a string selection")
        return _normalize_text(sel) in {_normalize_text(a) for a in question.acceptable}
    if kind == "numeric_exact":
        if isinstance(sel, bool) or not isinstance(sel, (int, float, str)):
            raise ValueError("numeric_exact expects a number")
        try:
            value = float(sel)
        except ValueError:
            raise ValueError(f"numeric_exact expects a number, got {sel!r}") from None
        return value == float(question.answer)
    raise ValueError(f"cannot grade kind {question.kind!r} as a choice")


def _require(condition: bool, message: str, question_id: str | None = None) -> None:
    if not condition:
        raise DeckValidationError(message, question_id)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_question(raw: Any, confidence_cap: float) -> Question:
    _require(isinstance(raw, dict), "each question must be a JSON object")
    qid = raw.get("id")
    _require(isinstance(qid, str) and qid != "", "missing or empty question id")
    kind = raw.get("kind")
    _require(kind in QUESTION_KINDS, f"unknown kind {kind!r}", qid)
    prompt = raw.get("prompt")
    _require(isinstance(prompt, str) and prompt != "", "missing prompt", qid)

    allowed = {"id", "kind", "prompt", "options", "k", "answer",
               "acceptable", "true_value", "beta", "p_rand"}
    extra = set(raw) - allowed
    _require(not extra, f"unknown fields {sorted(extra)}", qid)

    options = raw.get("options")
    if options is not None:
        _require(
            isinstance(options, list) and all(isinstance(o, str) for o in options),
            "options must be a list of strings", qid,
        )
        options = tuple(options)
    k = raw.get("k")
    answer = raw.get("answer")
    acceptable = raw.get("acceptable")
    true_value = raw.get("true_value")
    beta = raw.get("beta")
    p_rand = raw.get("p_rand")

    if kind == "true_false":
        _require(isinstance(answer, bool), "true_false answer must be a boolean", qid)
    elif kind == "choose_1_of_n":
        _require(options is not None and len(options) >= 2,
                 "choose_1_of_n needs at least 2 options", qid)
        _require(isinstance(answer, int) and not isinstance(answer, bool)
                 and 0 <= answer < len(options),
                 "answer must index the single correct option", qid)
    elif kind == "choose_k_of_n":
        _require(options is not None and len(options) >= 2,
                 "choose_k_of_n needs at least 2 options", qid)
        _require(isinstance(k, int) and not isinstance(k, bool)
                 and 1 <= k < len(options),
                 f"need 1 <= k < n (n={len(options) if options else 0})", qid)
        _require(isinstance(answer, int) and not isinstance(answer, bool)
                 and 0 <= answer < len(options),
                 "answer must index the single correct option", qid)
    elif kind == "free_text":
        _require(isinstance(acceptable, list) and acceptable
                 and all(isinstance(a, str) for a in acceptable),
                 "free_text needs a non-empty list of acceptable strings", qid)
        acceptable = tuple(acceptable)
    elif kind == "numeric_exact":
        _require(_is_number(answer), "numeric_exact answer must be a number", qid)
        answer = float(answer)
    else:  # interval kinds
        _require(_is_number(true_value), f"{kind} needs a numeric true_value", qid)
        true_value = float(true_value)
        if kind == "interval_magnitude":
            _require(true_value > 0,
                     f"interval_magnitude true_value must be positive, got {true_value}", qid)
        if beta is not None:
            _require(_is_number(beta) and 0 < beta < 1,
                     f"beta must be in (0, 1), got {beta}", qid)

    if kind in OPEN_ENDED_KINDS:
        _require(p_rand is not None, f"{kind} requires an explicit p_rand", qid)
    if p_rand is not None:
        _require(_is_number(p_rand) and 0 < p_rand < confidence_cap,
                 f"p_rand must be in (0, {confidence_cap}), got {p_rand}", qid)

    question = Question(
        id=qid, kind=kind, prompt=prompt, options=options, k=k, answer=answer,
        acceptable=acceptable, true_value=true_value, beta=beta, p_rand=p_rand,
    )
    if kind in CHOICE_KINDS:
        chance = derive_p_rand(question)
        _require(0 < chance < confidence_cap,
                 f"chance level {chance} not below the confidence cap {confidence_cap}", qid)
    return question


def load_deck(source: bytes | str | BinaryIO) -> Deck:
    """Parse and validate a deck document.

    Accepts raw bytes, a JSON string, or a readable file object.  Raises
    DeckValidationError with the offending question id on any violation.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise DeckValidationError(f"not valid JSON: {exc}") from exc

    _require(isinstance(raw, dict), "deck document must be a JSON object")
    deck_id = raw.get("id")
    _require(isinstance(deck_id, str) and deck_id != "", "missing deck id")
    title = raw.get("title")
    _require(isinstance(title, str) and title != "", "missing deck title")
    rule = raw.get("scoring_rule")
    _require(rule in RULE_KINDS, f"unknown scoring_rule {rule!r}")

    params = raw.get("params", {})
    _require(isinstance(params, dict), "params must be an object")
    unknown = set(params) - PARAM_OVERRIDE_KEYS
    _require(not unknown, f"unknown params {sorted(unknown)}")
    for key, value in params.items():
        _require(_is_number(value), f"param {key} must be a number")
    if "beta" in params:
        _require(0 < params["beta"] < 1, f"param beta must be in (0, 1), got {params['beta']}")

    raw_questions = raw.get("questions")
    _require(isinstance(raw_questions, list) and raw_questions,
             "deck needs a non-empty questions list")

    cap = params.get("p_max", CONFIDENCE_CAP_DEFAULT)
    questions = []
    seen: set[str] = set()
    for rq in raw_questions:
        q = _parse_question(rq, cap)
        _require(q.id not in seen, "duplicate question id", q.id)
        seen.add(q.id)
        _require(q.kind in RULE_KINDS[rule],
                 f"kind {q.kind!r} is not scorable by rule {rule!r}", q.id)
        questions.append(q)

    deck = Deck(id=deck_id, title=title, scoring_rule=rule,
                params={k: float(v) for k, v in params.items()},
                questions=tuple(questions))
    # Constructing the parameter sets exercises their own invariants.
    try:
        if rule == "practical_log":
            for q in deck.questions:
                deck.choice_params(q)
        else:
            deck.interval_params()
    except DeckValidationError:
        raise
    except ValueError as exc:
        raise DeckValidationError(str(exc)) from exc
    return deck


def serialize_deck(deck: Deck) -> dict:
    """Deck back to its JSON document form; inverse of load_deck."""
    questions = []
    for q in deck.questions:
        entry: dict[str, Any] = {"id": q.id, "kind": q.kind, "prompt": q.prompt}
        if q.options is not None:
            entry["options"] = list(q.options)
        if q.k is not None:
            entry["k"] = q.k
        if q.answer is not None:
            entry["answer"] = q.answer
        if q.acceptable is not None:
            entry["acceptable"] = list(q.acceptable)
        if q.true_value is not None:
            entry["true_value"] = q.true_value
        if q.beta is not None:
            entry["beta"] = q.beta
        if q.p_rand is not None:
            entry["p_rand"] = q.p_rand
        questions.append(entry)
    doc: dict[str, Any] = {
        "id": deck.id,
        "title": deck.title,
        "scoring_rule": deck.scoring_rule,
        "questions": questions,
    }
    if deck.params:
        doc["params"] = dict(deck.params)
    return doc


def deck_to_json(deck: Deck) -> str:
    return json.dumps(serialize_deck(deck), indent=2, ensure_ascii=False)
