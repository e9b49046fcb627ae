"""Simulated forecasters for exercising the scoring and calibration pipeline.

The belief model: each prediction draws a latent probability of being correct
uniformly from the question's allowed confidence range, the outcome is a coin
flip at that probability, and the agent reports a (possibly distorted)
version of it.  A calibrated agent reports the latent probability exactly, so
its calibration curve concentrates on the diagonal; an overconfident agent's
curve falls below the diagonal, an underconfident agent's above.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .deck import CHOICE_KINDS, ChoicePrediction, Deck, Question, derive_p_rand
from .session import PredictionEvent, build_event

AGENT_KINDS = ("calibrated", "overconfident", "underconfident", "random")

EPOCH_TIMESTAMP = "1970-01-01T00:00:00+00:00"


def _identity(p: float) -> float:
    return p


def _overconfident(p: float) -> float:
    return p ** 0.5


def _underconfident(p: float) -> float:
    return p * p


_DEFAULT_DISTORTIONS: dict[str, Callable[[float], float]] = {
    "calibrated": _identity,
    "overconfident": _overconfident,
    "underconfident": _underconfident,
    "random": _identity,  # unused: the random agent always reports chance level
}


@dataclass(frozen=True)
class SimAgent:
    """A simulated forecaster: a reporting distortion plus a seed."""

    kind: str
    distortion: Callable[[float], float] | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in AGENT_KINDS:
            raise ValueError(f"unknown agent kind {self.kind!r}; choose from {AGENT_KINDS}")
        d = self.reporting_map()
        if abs(d(0.0)) > 1e-12 or abs(d(1.0) - 1.0) > 1e-12:
            raise ValueError("distortion must fix 0 and 1")
        probe = [i / 100.0 for i in range(101)]
        values = [d(p) for p in probe]
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise ValueError("distortion must map [0, 1] into [0, 1]")
        if any(b < a - 1e-12 for a, b in zip(values, values[1:])):
            raise ValueError("distortion must be monotone nondecreasing")

    def reporting_map(self) -> Callable[[float], float]:
        return self.distortion or _DEFAULT_DISTORTIONS[self.kind]


def _wrong_selection(question: Question, rng: random.Random):
    kind = question.kind
    if kind == "true_false":
        return not question.answer
    if kind == "choose_1_of_n":
        others = [i for i in range(question.n) if i != question.answer]
        return rng.choice(others)
    if kind == "choose_k_of_n":
        others = [i for i in range(question.n) if i != question.answer]
        return sorted(rng.sample(others, question.k))
    if kind == "free_text":
        normalized = {a.strip().lower() for a in question.acceptable}
        guess = "incorrect answer"
        while guess in normalized:
            guess += " x"
        return guess
    return float(question.answer) + 1.0


def _correct_selection(question: Question, rng: random.Random):
    kind = question.kind
    if kind == "true_false":
        return question.answer
    if kind == "choose_1_of_n":
        return question.answer
    if kind == "choose_k_of_n":
        others = [i for i in range(question.n) if i != question.answer]
        picks = rng.sample(others, question.k - 1) + [question.answer]
        return sorted(picks)
    if kind == "free_text":
        return question.acceptable[0]
    return question.answer


def run_simulation(
    deck: Deck,
    agent: SimAgent,
    n: int,
    session_id: str = "simulation",
    fixed_timestamp: str | None = None,
) -> list[PredictionEvent]:
    """Generate ``n`` scored predictions, cycling through the deck's
    questions.  Deterministic given the agent's seed; pass a fixed timestamp
    to make the event log byte-identical across runs."""
    if any(q.kind not in CHOICE_KINDS for q in deck.questions):
        raise ValueError("simulation agents answer choice questions only")
    if n <= 0:
        raise ValueError(f"need a positive number of predictions, got {n}")
    rng = random.Random(agent.seed)
    report = agent.reporting_map()
    cap = deck.confidence_cap()

    events = []
    for i in range(n):
        question = deck.questions[i % len(deck.questions)]
        chance = derive_p_rand(question)
        latent = rng.uniform(chance, cap)
        correct = rng.random() < latent
        stated = chance if agent.kind == "random" else report(latent)
        selection = (
            _correct_selection(question, rng) if correct else _wrong_selection(question, rng)
        )
        prediction = ChoicePrediction(selection=selection, confidence=stated)
        events.append(
            build_event(deck, question, prediction, session_id, timestamp=fixed_timestamp)
        )
    return events


def write_event_log(events: Sequence[PredictionEvent], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ev in events:
            fh.write(ev.to_json_line() + "\n")
