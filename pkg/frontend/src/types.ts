/** Wire types of the authentication API. */

export interface CatalogEntry {
  id: number;
  asset_path: string;
  label: string;
}

export interface SessionPayload {
  session_id: string;
  grid: number[];
  clock: string;
  attempts_remaining: number;
}

export type AttemptPayload =
  | { outcome: "success" }
  | { outcome: "retry"; grid: number[]; clock: string; attempts_remaining: number }
  | { outcome: "locked" };

export interface RegistrationPayload {
  user_id: string;
  phase: string;
}

export type ShiftDirection = "up" | "down" | "left" | "right";
export type TimeUnit = "h1" | "h2" | "m1" | "m2";

export const GRID_COLS = 5;
export const GRID_ROWS = 5;
export const GRID_CELLS = GRID_COLS * GRID_ROWS;
