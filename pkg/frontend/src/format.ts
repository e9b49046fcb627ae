// Score presentation. The server sends both full-precision points and the
// display-rounded integer; the client never rounds or recomputes.

const MINUS = "−";

export function formatPoints(pointsDisplay: number): string {
  if (pointsDisplay > 0) return `+${pointsDisplay}`;
  if (pointsDisplay < 0) return `${MINUS}${Math.abs(pointsDisplay)}`;
  return "0";
}

export type ScoreClass = "score-positive" | "score-negative" | "score-zero";

export function pointsClass(pointsDisplay: number): ScoreClass {
  if (pointsDisplay > 0) return "score-positive";
  if (pointsDisplay < 0) return "score-negative";
  return "score-zero";
}

export function formatPercent(probability: number): string {
  return `${Math.round(probability * 100)}%`;
}
