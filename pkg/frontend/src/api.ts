import type {
  AttemptPayload,
  CatalogEntry,
  RegistrationPayload,
  SessionPayload,
  ShiftDirection,
  TimeUnit,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error raised for any non-2xx response or network failure. */
export class ApiRequestError extends Error {
  constructor(
    message: string,
    readonly code: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }

  get isNetworkFailure(): boolean {
    return this.code === "network";
  }
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch {
      throw new ApiRequestError("cannot reach the server", "network", 0);
    }
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const message =
        payload && typeof payload.error === "string"
          ? payload.error
          : `request failed (HTTP ${response.status})`;
      const code =
        payload && typeof payload.code === "string" ? payload.code : "http_error";
      throw new ApiRequestError(message, code, response.status);
    }
    return payload as T;
  }

  createAccount(userId: string, confirm: string): Promise<RegistrationPayload> {
    return this.request("POST", "/api/accounts", {
      user_id: userId,
      user_id_confirm: confirm,
    });
  }

  setPasswordImages(userId: string, imageIds: number[]): Promise<RegistrationPayload> {
    return this.request("PUT", `/api/accounts/${encodeURIComponent(userId)}/password`, {
      image_ids: imageIds,
    });
  }

  setCondition(
    userId: string,
    direction: ShiftDirection,
    timeUnit: TimeUnit,
  ): Promise<RegistrationPayload> {
    return this.request("PUT", `/api/accounts/${encodeURIComponent(userId)}/condition`, {
      direction,
      time_unit: timeUnit,
    });
  }

  getCatalog(): Promise<CatalogEntry[]> {
    return this.request("GET", "/api/catalog");
  }

  beginSession(userId: string): Promise<SessionPayload> {
    return this.request("POST", "/api/sessions", { user_id: userId });
  }

  submitAttempt(sessionId: string, clicks: number[]): Promise<AttemptPayload> {
    return this.request("POST", `/api/sessions/${encodeURIComponent(sessionId)}/attempt`, {
      clicks,
    });
  }
}
