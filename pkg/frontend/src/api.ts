/**
 * Typed client for the recommender service's HTTP/JSON contract.
 *
 * The UI talks to the service exclusively through this module; nothing
 * else issues requests. The base URL is configurable so the same build
 * can point at any running service instance.
 */

export interface TopicView {
  topic_id: number;
  weight: number;
  terms: string[];
}

export interface VenueRecommendation {
  venue: string;
  score: number;
  topics: TopicView[];
}

export interface RecommendResponse {
  query_topics: TopicView[];
  recommendations: VenueRecommendation[];
}

export interface RecommendRequest {
  title: string;
  abstract: string;
  keywords: string[];
  k: number;
  top_topics: number;
  terms_per_topic: number;
}

export interface HealthInfo {
  status: string;
  model_version: number;
  feature_kind: string;
  num_topics: number;
  num_venues: number;
  corpus_fingerprint: string;
}

/** Failure of a service call, normalized from the service's error JSON. */
export class ApiError extends Error {
  readonly code: string;
  /** HTTP status, or null when the request never reached the service. */
  readonly status: number | null;

  constructor(code: string, message: string, status: number | null) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => globalThis.fetch(url, init));
  }

  async recommend(
    request: RecommendRequest,
    signal?: AbortSignal,
  ): Promise<RecommendResponse> {
    const response = await this.send("/recommend", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    return (await response.json()) as RecommendResponse;
  }

  async health(): Promise<HealthInfo> {
    const response = await this.send("/health", { method: "GET" });
    return (await response.json()) as HealthInfo;
  }

  async venues(): Promise<string[]> {
    const response = await this.send("/venues", { method: "GET" });
    const body = (await response.json()) as { venues: string[] };
    return body.venues;
  }

  private async send(path: string, init: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw err;
      }
      const message = err instanceof Error ? err.message : String(err);
      throw new ApiError("network", `service unreachable: ${message}`, null);
    }
    if (!response.ok) {
      throw await this.normalizeFailure(response);
    }
    return response;
  }

  private async normalizeFailure(response: Response): Promise<ApiError> {
    let code = "http_error";
    let message = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as {
        error?: { code?: string; message?: string };
      };
      if (body.error) {
        code = body.error.code ?? code;
        message = body.error.message ?? message;
      }
    } catch {
      // Body was not the service's error JSON; keep the generic message.
    }
    return new ApiError(code, message, response.status);
  }
}
