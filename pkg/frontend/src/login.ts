import { ApiClient, ApiRequestError } from "./api.js";
import { ClickBuffer } from "./clickBuffer.js";

export type LoginPhase = "user-id" | "challenge" | "success" | "locked";

/** Login flow: one session at a time, two ordered clicks per attempt.
 *
 * The displayed clock is always the server's snapshot for the current grid,
 * never the device clock. A network failure keeps the click buffer so the
 * attempt can be retried; a response for a superseded session is discarded.
 */
export class LoginFlow {
  phase: LoginPhase = "user-id";
  error: string | null = null;
  /** Set when the session died server-side and login must be restarted. */
  needsRestart = false;
  readonly buffer = new ClickBuffer();

  sessionId: string | null = null;
  grid: number[] = [];
  clock = "";
  attemptsRemaining = 0;

  constructor(private readonly api: ApiClient) {}

  async start(userId: string): Promise<void> {
    try {
      const session = await this.api.beginSession(userId);
      this.sessionId = session.session_id;
      this.grid = session.grid;
      this.clock = session.clock;
      this.attemptsRemaining = session.attempts_remaining;
      this.phase = "challenge";
      this.error = null;
      this.needsRestart = false;
      this.buffer.clear();
    } catch (error) {
      this.error = error instanceof ApiRequestError ? error.message : String(error);
    }
  }

  clickCell(cell: number): boolean {
    if (this.phase !== "challenge") return false;
    return this.buffer.add(cell);
  }

  clearClicks(): void {
    this.buffer.clear();
  }

  get canSubmit(): boolean {
    return this.phase === "challenge" && this.buffer.isFull;
  }

  async submit(): Promise<void> {
    if (!this.canSubmit || this.sessionId === null) return;
    const sessionAtSend = this.sessionId;
    let payload;
    try {
      payload = await this.api.submitAttempt(sessionAtSend, [...this.buffer.selection]);
    } catch (error) {
      if (error instanceof ApiRequestError && error.isNetworkFailure) {
        // Retryable: keep the buffered clicks.
        this.error = error.message;
        return;
      }
      this.error = error instanceof ApiRequestError ? error.message : String(error);
      this.needsRestart = true;
      return;
    }
    if (sessionAtSend !== this.sessionId) return; // superseded mid-flight

    this.error = null;
    if (payload.outcome === "success") {
      this.phase = "success";
      this.grid = [];
      this.buffer.clear();
    } else if (payload.outcome === "locked") {
      this.phase = "locked";
      this.grid = [];
      this.buffer.clear();
    } else {
      this.grid = payload.grid;
      this.clock = payload.clock;
      this.attemptsRemaining = payload.attempts_remaining;
      this.buffer.clear();
    }
  }

  restart(): void {
    this.phase = "user-id";
    this.sessionId = null;
    this.grid = [];
    this.clock = "";
    this.attemptsRemaining = 0;
    this.error = null;
    this.needsRestart = false;
    this.buffer.clear();
  }
}
