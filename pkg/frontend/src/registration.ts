import { ApiClient, ApiRequestError } from "./api.js";
import type { ShiftDirection, TimeUnit } from "./types.js";

export type RegistrationStep = "user-id" | "image-pick" | "condition-pick" | "done";

/** Three-step registration wizard: user id, two password images (ordered by
 * click sequence), shift condition. A step only advances when its API call
 * succeeds; errors surface inline and keep the step. */
export class RegistrationWizard {
  step: RegistrationStep = "user-id";
  error: string | null = null;
  userId = "";
  /** Image ids in click order; badge = position + 1. */
  selection: number[] = [];
  direction: ShiftDirection = "up";
  timeUnit: TimeUnit = "h1";

  constructor(private readonly api: ApiClient) {}

  async submitUserId(userId: string, confirm: string): Promise<void> {
    if (this.step !== "user-id") return;
    try {
      await this.api.createAccount(userId, confirm);
    } catch (error) {
      this.error = error instanceof ApiRequestError ? error.message : String(error);
      return;
    }
    this.userId = userId;
    this.error = null;
    this.step = "image-pick";
  }

  /** Click a catalog tile: select, or deselect if already selected.
   * A third selection is ignored. */
  toggleImage(imageId: number): void {
    if (this.step !== "image-pick") return;
    const index = this.selection.indexOf(imageId);
    if (index !== -1) {
      this.selection.splice(index, 1);
    } else if (this.selection.length < 2) {
      this.selection.push(imageId);
    }
  }

  badgeFor(imageId: number): number | null {
    const index = this.selection.indexOf(imageId);
    return index === -1 ? null : index + 1;
  }

  get canConfirmImages(): boolean {
    return this.selection.length === 2;
  }

  resetSelection(): void {
    this.selection = [];
  }

  async confirmImages(): Promise<void> {
    if (this.step !== "image-pick") return;
    if (!this.canConfirmImages) {
      this.error = "select exactly two images";
      return;
    }
    try {
      await this.api.setPasswordImages(this.userId, [...this.selection]);
    } catch (error) {
      this.error = error instanceof ApiRequestError ? error.message : String(error);
      return;
    }
    this.error = null;
    this.step = "condition-pick";
  }

  setCondition(direction: ShiftDirection, timeUnit: TimeUnit): void {
    this.direction = direction;
    this.timeUnit = timeUnit;
  }

  async confirmCondition(): Promise<void> {
    if (this.step !== "condition-pick") return;
    try {
      await this.api.setCondition(this.userId, this.direction, this.timeUnit);
    } catch (error) {
      this.error = error instanceof ApiRequestError ? error.message : String(error);
      return;
    }
    this.error = null;
    this.step = "done";
  }
}
