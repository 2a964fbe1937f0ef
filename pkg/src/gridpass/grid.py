"""Grid geometry and unbiased challenge-set generation.

A challenge set is a random permutation of the full image catalog laid out
row-major on the grid, so every image appears exactly once per challenge.
Coordinates are (col, row) with the origin at the top-left corner: col grows
rightward, row grows downward.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import CatalogError, ImageNotFoundError

ImageId = int


class GridCoord(NamedTuple):
    col: int
    row: int


@dataclass(frozen=True)
class GridSpec:
    """Grid dimensions. The scheme runs on 5x5 but the geometry is generic."""

    cols: int = 5
    rows: int = 5

    def __post_init__(self) -> None:
        if self.cols < 1 or self.rows < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.cols}x{self.rows}")

    @property
    def cell_count(self) -> int:
        return self.cols * self.rows

    def contains(self, coord: GridCoord) -> bool:
        return 0 <= coord.col < self.cols and 0 <= coord.row < self.rows

    def coord_to_index(self, coord: GridCoord) -> int:
        """Row-major cell index for a coordinate."""
        if not self.contains(coord):
            raise ValueError(f"coordinate {coord} out of bounds for {self.cols}x{self.rows} grid")
        return coord.row * self.cols + coord.col

    def index_to_coord(self, index: int) -> GridCoord:
        """Inverse of coord_to_index."""
        if not 0 <= index < self.cell_count:
            raise ValueError(f"cell index {index} out of bounds for {self.cols}x{self.rows} grid")
        return GridCoord(col=index % self.cols, row=index // self.cols)


@dataclass(frozen=True)
class ChallengeGrid:
    """One challenge set: a permutation of the catalog in row-major cells."""

    spec: GridSpec
    cells: tuple[ImageId, ...]

    def __post_init__(self) -> None:
        if len(self.cells) != self.spec.cell_count:
            raise CatalogError(
                f"challenge has {len(self.cells)} cells, grid needs {self.spec.cell_count}"
            )
        if len(set(self.cells)) != len(self.cells):
            raise CatalogError("challenge cells are not a permutation: duplicate image id")

    def image_at(self, coord: GridCoord) -> ImageId:
        return self.cells[self.spec.coord_to_index(coord)]

    def locate(self, image: ImageId) -> GridCoord:
        """Cell holding `image`; raises ImageNotFoundError on a catalog mismatch."""
        try:
            index = self.cells.index(image)
        except ValueError:
            raise ImageNotFoundError(f"image {image} is not in this challenge grid") from None
        return self.spec.index_to_coord(index)


def generate_challenge(
    spec: GridSpec, catalog: Sequence[ImageId], rng: random.Random
) -> ChallengeGrid:
    """Uniformly random permutation of `catalog` onto the grid.

    `rng.shuffle` is an unbiased Fisher-Yates shuffle, so each of the
    cell_count! layouts is equally likely; the same seeded `rng` state
    reproduces the same challenge.
    """
    if len(catalog) != spec.cell_count:
        raise CatalogError(
            f"catalog has {len(catalog)} images, {spec.cols}x{spec.rows} grid needs "
            f"{spec.cell_count}"
        )
    if len(set(catalog)) != len(catalog):
        raise CatalogError("catalog contains duplicate image ids")
    cells = list(catalog)
    rng.shuffle(cells)
    return ChallengeGrid(spec=spec, cells=tuple(cells))
