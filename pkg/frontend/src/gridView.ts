import type { CatalogEntry } from "./types.js";
import { GRID_COLS } from "./types.js";

export interface TileModel {
  cell: number;
  row: number;
  col: number;
  imageId: number;
  label: string;
  assetPath: string;
  badge: number | null;
}

/** Row-major cell index to (row, col); the wire order is the visual order. */
export function cellPosition(cell: number): { row: number; col: number } {
  return { row: Math.floor(cell / GRID_COLS), col: cell % GRID_COLS };
}

/** Tile view models for a grid payload, in render (row-major) order. */
export function tilesFor(
  grid: readonly number[],
  catalog: ReadonlyMap<number, CatalogEntry>,
  badgeFor: (cell: number) => number | null = () => null,
): TileModel[] {
  return grid.map((imageId, cell) => {
    const entry = catalog.get(imageId);
    if (entry === undefined) {
      throw new Error(`image id ${imageId} missing from catalog`);
    }
    const { row, col } = cellPosition(cell);
    return {
      cell,
      row,
      col,
      imageId,
      label: entry.label,
      assetPath: entry.asset_path,
      badge: badgeFor(cell),
    };
  });
}

export function catalogById(entries: readonly CatalogEntry[]): Map<number, CatalogEntry> {
  return new Map(entries.map((entry) => [entry.id, entry]));
}
