// Wire types mirroring the calscore HTTP API. The server is authoritative
// for every number shown in the UI; the client only formats.

export type QuestionKind =
  | "true_false"
  | "choose_1_of_n"
  | "choose_k_of_n"
  | "free_text"
  | "numeric_exact"
  | "interval_distance"
  | "interval_magnitude";

export interface DeckSummary {
  id: string;
  title: string;
  question_count: number;
  scoring_rule: string;
}

export interface QuestionView {
  id: string;
  kind: QuestionKind;
  prompt: string;
  options?: string[];
  k?: number;
  n?: number;
  p_rand?: number;
  p_max?: number;
  beta?: number;
}

export interface NextPayload {
  question: QuestionView | null;
  answered: number;
  total: number;
  done: boolean;
}

export type Selection = boolean | number | number[] | string;

export interface ChoicePredictionBody {
  selection: Selection;
  confidence: number;
}

export interface IntervalPredictionBody {
  lower: number;
  upper: number;
}

export type PredictionBody = ChoicePredictionBody | IntervalPredictionBody;

export interface AnswerResponse {
  points: number;
  points_display: number;
  correct: boolean | null;
  true_value: number | null;
}

export interface CalibrationBin {
  lower: number;
  upper: number;
  count: number;
  frequency_correct: number | null;
  mean_confidence: number | null;
}

export interface SessionStats {
  total_points: number;
  predictions: number;
  mean_points: number | null;
  interval_hit_rate?: number | null;
}

export interface HealthPayload {
  status: string;
  decks_loaded: number;
  warnings: string[];
}

export function isChoiceKind(kind: QuestionKind): boolean {
  return (
    kind === "true_false" ||
    kind === "choose_1_of_n" ||
    kind === "choose_k_of_n" ||
    kind === "free_text" ||
    kind === "numeric_exact"
  );
}
