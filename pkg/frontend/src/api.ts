import type {
  ApiErrorBody,
  BatchResponse,
  Decision,
  DecisionRequest,
  FeedbackRequest,
  RankingResponse,
  ScorecardDetail,
} from "./types";

/** Error carrying the server's machine-readable code ("network" when the
 * request never reached the server). */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

function isErrorBody(value: unknown): value is ApiErrorBody {
  return (
    typeof value === "object" &&
    value !== null &&
    "error" in value &&
    typeof (value as ApiErrorBody).error?.code === "string"
  );
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly token?: string,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (this.token) headers["authorization"] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new ApiError("network", `request to ${path} failed: ${String(cause)}`, 0);
    }
    const text = await response.text();
    const parsed: unknown = text ? JSON.parse(text) : null;
    if (!response.ok) {
      if (isErrorBody(parsed)) {
        throw new ApiError(parsed.error.code, parsed.error.message, response.status);
      }
      throw new ApiError("http_error", `${method} ${path} -> ${response.status}`, response.status);
    }
    return parsed as T;
  }

  ranking(offset = 0, limit?: number): Promise<RankingResponse> {
    const params = new URLSearchParams({ offset: String(offset) });
    if (limit !== undefined) params.set("limit", String(limit));
    return this.request<RankingResponse>("GET", `/v1/ranking?${params}`);
  }

  nextBatch(): Promise<BatchResponse> {
    return this.request<BatchResponse>("POST", "/v1/batches/next");
  }

  scorecard(candidateId: string): Promise<ScorecardDetail> {
    return this.request<ScorecardDetail>(
      "GET",
      `/v1/candidates/${encodeURIComponent(candidateId)}/scorecard`,
    );
  }

  submitDecision(payload: DecisionRequest): Promise<Decision> {
    return this.request<Decision>("POST", "/v1/decisions", payload);
  }

  submitFeedback(payload: FeedbackRequest): Promise<{ feedback_id: string }> {
    return this.request<{ feedback_id: string }>("POST", "/v1/feedback", payload);
  }
}
