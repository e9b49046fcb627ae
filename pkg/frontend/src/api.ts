import type {
  AnswerResponse,
  CalibrationBin,
  DeckSummary,
  HealthPayload,
  NextPayload,
  PredictionBody,
  SessionStats,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Typed client for the calscore HTTP API. */
export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, {
        method,
        headers: body !== undefined ? { "content-type": "application/json" } : undefined,
        body: body !== undefined ? JSON.stringify(body) : undefined,
      });
    } catch (err) {
      throw new ApiError(0, "unreachable", `cannot reach server: ${String(err)}`);
    }
    if (!response.ok) {
      let code = "unknown";
      let message = `request failed with status ${response.status}`;
      try {
        const payload = (await response.json()) as { code?: string; message?: string };
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body: keep the generic message
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  listDecks(): Promise<DeckSummary[]> {
    return this.request<DeckSummary[]>("GET", "/decks");
  }

  async createSession(deckId: string, seed?: number): Promise<string> {
    const payload = await this.request<{ session_id: string }>("POST", "/sessions", {
      deck_id: deckId,
      ...(seed !== undefined ? { seed } : {}),
    });
    return payload.session_id;
  }

  nextQuestion(sessionId: string): Promise<NextPayload> {
    return this.request<NextPayload>("GET", `/sessions/${sessionId}/next`);
  }

  submitAnswer(
    sessionId: string,
    questionId: string,
    prediction: PredictionBody,
  ): Promise<AnswerResponse> {
    return this.request<AnswerResponse>("POST", `/sessions/${sessionId}/answers`, {
      question_id: questionId,
      prediction,
    });
  }

  async calibration(sessionId: string, edges?: number[]): Promise<CalibrationBin[]> {
    const query = edges ? `?edges=${edges.join(",")}` : "";
    const payload = await this.request<{ bins: CalibrationBin[] }>(
      "GET",
      `/sessions/${sessionId}/calibration${query}`,
    );
    return payload.bins;
  }

  stats(sessionId: string): Promise<SessionStats> {
    return this.request<SessionStats>("GET", `/sessions/${sessionId}/stats`);
  }

  health(): Promise<HealthPayload> {
    return this.request<HealthPayload>("GET", "/health");
  }
}
