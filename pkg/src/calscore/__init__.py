"""calscore: scoring rules and a training engine for calibration practice."""

from .choice import (
    brier_score,
    clamp_probability,
    log_score,
    practical_log_choice_score,
    practical_score,
    proper_from_convex,
    quadratic_score,
)
from .deck import (
    ChoicePrediction,
    Deck,
    DeckValidationError,
    IntervalPrediction,
    Question,
    derive_p_rand,
    grade_choice,
    load_deck,
    serialize_deck,
)
from .intervals import (
    dist_final_points,
    dist_score_final,
    dist_score_raw,
    generic_interval_score,
    linear_interval_score,
    log_interval_score,
    mag_final_points,
    mag_score_final,
    mag_score_raw,
)
from .params import (
    ChoiceScoringParams,
    IntervalForecast,
    IntervalScoringParams,
    ScoreResult,
    display_points,
)
from .properness import (
    BeliefDistribution,
    BeliefGrid,
    PropernessReport,
    SearchGrid,
    best_interval,
    expected_choice_score,
    expected_interval_score,
    honest_interval,
    incentive_gap,
    verify_choice_properness,
)
from .session import (
    CalibrationBin,
    PredictionEvent,
    SessionStats,
    SessionStore,
    calibration_bins,
    replay,
)
from .simulate import SimAgent, run_simulation

__version__ = "0.1.0"
