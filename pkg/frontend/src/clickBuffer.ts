/** Ordered buffer of the two login clicks.
 *
 * A third click is ignored until the buffer is reset, and the same cell
 * cannot be buffered twice: the two clicks must name distinct cells.
 */
export class ClickBuffer {
  static readonly CAPACITY = 2;

  private cells: number[] = [];

  /** Returns true if the click was accepted into the buffer. */
  add(cell: number): boolean {
    if (this.cells.length >= ClickBuffer.CAPACITY) return false;
    if (this.cells.includes(cell)) return false;
    this.cells.push(cell);
    return true;
  }

  clear(): void {
    this.cells = [];
  }

  get selection(): readonly number[] {
    return this.cells;
  }

  get isFull(): boolean {
    return this.cells.length === ClickBuffer.CAPACITY;
  }

  /** 1-based click-order badge for a cell, or null if not buffered. */
  badgeFor(cell: number): number | null {
    const index = this.cells.indexOf(cell);
    return index === -1 ? null : index + 1;
  }
}
