import { ApiClient, ApiError } from "./api.js";
import { buildChoiceControl, buildIntervalControl } from "./answers.js";
import { renderCalibrationChart } from "./calibration.js";
import { ConfidenceControl } from "./confidence.js";
import { formatPoints, pointsClass } from "./format.js";
import { isChoiceKind } from "./types.js";
import type {
  AnswerResponse,
  DeckSummary,
  NextPayload,
  PredictionBody,
  QuestionView,
} from "./types.js";

/**
 * Single-page trainer. All scores shown come from API responses; the client
 * holds no scoring logic. At most one answer submission is in flight, and
 * the UI only updates after the server replies.
 */
export class App {
  private sessionId: string | null = null;
  private deckTitle = "";
  private submitting = false;
  private work: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  /** Resolves when queued UI work has settled; used by tests. */
  idle(): Promise<void> {
    return this.work;
  }

  private enqueue(task: () => Promise<void>): void {
    this.work = this.work.then(task).catch((err) => {
      this.renderError(err);
    });
  }

  start(): Promise<void> {
    this.enqueue(() => this.showDeckPicker());
    return this.idle();
  }

  private fresh(className: string): HTMLDivElement {
    this.root.replaceChildren();
    const screen = document.createElement("div");
    screen.className = className;
    this.root.append(screen);
    return screen;
  }

  private renderError(err: unknown): void {
    const screen = this.fresh("error-screen");
    const banner = document.createElement("div");
    banner.className = "banner-error";
    banner.textContent =
      err instanceof ApiError && err.status === 0
        ? "Cannot reach the training server."
        : `Something went wrong: ${err instanceof Error ? err.message : String(err)}`;
    const retry = document.createElement("button");
    retry.className = "retry-button";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => {
      this.enqueue(() => this.showDeckPicker());
    });
    screen.append(banner, retry);
  }

  private async showDeckPicker(): Promise<void> {
    let decks: DeckSummary[];
    try {
      decks = await this.api.listDecks();
    } catch (err) {
      this.renderError(err);
      return;
    }
    const screen = this.fresh("deck-picker");
    const heading = document.createElement("h1");
    heading.textContent = "Pick a deck";
    screen.append(heading);
    const list = document.createElement("div");
    list.className = "deck-list";
    for (const deck of decks) {
      const button = document.createElement("button");
      button.className = "deck-button";
      button.dataset.deckId = deck.id;
      button.textContent = `${deck.title} (${deck.question_count} questions)`;
      button.addEventListener("click", () => {
        this.enqueue(() => this.startSession(deck));
      });
      list.append(button);
    }
    if (decks.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-placeholder";
      empty.textContent = "No decks available.";
      list.append(empty);
    }
    screen.append(list);
  }

  private async startSession(deck: DeckSummary): Promise<void> {
    this.sessionId = await this.api.createSession(deck.id);
    this.deckTitle = deck.title;
    await this.showNext();
  }

  private async showNext(): Promise<void> {
    if (!this.sessionId) return;
    const payload = await this.api.nextQuestion(this.sessionId);
    if (payload.done || payload.question === null) {
      await this.showCalibration();
      return;
    }
    this.renderQuestion(payload, payload.question);
  }

  private renderQuestion(payload: NextPayload, question: QuestionView): void {
    const screen = this.fresh("question-play");

    const progress = document.createElement("div");
    progress.className = "progress";
    progress.textContent = `${this.deckTitle} — question ${payload.answered + 1} of ${payload.total}`;
    screen.append(progress);

    const prompt = document.createElement("p");
    prompt.className = "question-prompt";
    prompt.textContent = question.prompt;
    screen.append(prompt);

    const validation = document.createElement("div");
    validation.className = "validation-error";

    const submit = document.createElement("button");
    submit.className = "submit-button";
    submit.textContent = "Submit";

    if (isChoiceKind(question.kind)) {
      const answer = buildChoiceControl(question);
      const confidence = new ConfidenceControl(
        question.p_rand ?? 0.5,
        question.p_max ?? 0.99,
      );
      screen.append(answer.element, confidence.element, validation, submit);
      submit.addEventListener("click", () => {
        const read = answer.read();
        if (!read.ok) {
          validation.textContent = read.message;
          return;
        }
        validation.textContent = "";
        this.submitPrediction(question, submit, {
          selection: read.selection,
          confidence: confidence.value(),
        });
      });
    } else {
      const coverage = document.createElement("p");
      coverage.className = "coverage-note";
      const percent = Math.round((question.beta ?? 0.9) * 100);
      coverage.textContent = `Give a range you believe contains the answer with ${percent}% probability.`;
      const answer = buildIntervalControl(question);
      screen.append(coverage, answer.element, validation, submit);
      submit.addEventListener("click", () => {
        const read = answer.read();
        if (!read.ok) {
          validation.textContent = read.message;
          return;
        }
        validation.textContent = "";
        this.submitPrediction(question, submit, {
          lower: read.lower,
          upper: read.upper,
        });
      });
    }
  }

  private submitPrediction(
    question: QuestionView,
    submit: HTMLButtonElement,
    prediction: PredictionBody,
  ): void {
    if (this.submitting || !this.sessionId) return;
    this.submitting = true;
    submit.disabled = true;
    const sessionId = this.sessionId;
    this.enqueue(async () => {
      try {
        const response = await this.api.submitAnswer(sessionId, question.id, prediction);
        this.renderFeedback(response);
      } finally {
        this.submitting = false;
      }
    });
  }

  private renderFeedback(response: AnswerResponse): void {
    const screen = this.fresh("feedback");

    const points = document.createElement("span");
    points.className = `points-display ${pointsClass(response.points_display)}`;
    points.textContent = formatPoints(response.points_display);
    points.title = `exact points: ${response.points}`;
    screen.append(points);

    const detail = document.createElement("p");
    detail.className = "feedback-detail";
    if (response.correct !== null) {
      detail.textContent = response.correct ? "Correct." : "Incorrect.";
    } else if (response.true_value !== null) {
      detail.textContent = `True value: ${response.true_value}`;
    }
    screen.append(detail);

    const next = document.createElement("button");
    next.className = "continue-button";
    next.textContent = "Continue";
    next.addEventListener("click", () => {
      this.enqueue(() => this.showNext());
    });
    screen.append(next);

    const curve = document.createElement("button");
    curve.className = "calibration-button";
    curve.textContent = "Calibration so far";
    curve.addEventListener("click", () => {
      this.enqueue(() => this.showCalibration());
    });
    screen.append(curve);
  }

  private async showCalibration(): Promise<void> {
    if (!this.sessionId) return;
    const [bins, stats] = await Promise.all([
      this.api.calibration(this.sessionId),
      this.api.stats(this.sessionId),
    ]);
    const screen = this.fresh("calibration-view");

    const heading = document.createElement("h2");
    heading.textContent = "Calibration";
    screen.append(heading);

    const summary = document.createElement("p");
    summary.className = "stats-summary";
    const mean = stats.mean_points === null ? "-" : stats.mean_points.toFixed(2);
    summary.textContent =
      `${stats.predictions} predictions, total ${stats.total_points.toFixed(2)} points, ` +
      `mean ${mean}`;
    screen.append(summary);

    const populated = bins.filter((bin) => bin.count > 0);
    if (populated.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-placeholder";
      empty.textContent = "No confidence predictions yet; the curve will appear here.";
      screen.append(empty);
    } else {
      screen.append(renderCalibrationChart(bins));
    }

    const next = document.createElement("button");
    next.className = "continue-button";
    next.textContent = "Keep playing";
    next.addEventListener("click", () => {
      this.enqueue(() => this.showNext());
    });
    const back = document.createElement("button");
    back.className = "back-button";
    back.textContent = "Back to decks";
    back.addEventListener("click", () => {
      this.sessionId = null;
      this.enqueue(() => this.showDeckPicker());
    });
    screen.append(next, back);
  }
}
