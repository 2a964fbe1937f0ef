"""Brute-force reference derivation used to validate the arithmetic engine.

Everything here is computed by literal cell walking and string handling:
single steps that physically wrap at the grid edges, repeated as many times
as needed, and clock digits read from the rendered HH:MM text. No modular
arithmetic. Kept deliberately independent of engine.py so the two can
cross-check each other.
"""

from __future__ import annotations

from .errors import ImageNotFoundError
from .grid import ChallengeGrid, GridCoord, GridSpec
from .scheme import (
    ClockTime,
    PassImageResult,
    Scenario,
    ShiftDirection,
    TimeUnit,
)

_DIGIT_POSITION = {
    TimeUnit.HOUR_TENS: 0,
    TimeUnit.HOUR_ONES: 1,
    TimeUnit.MINUTE_TENS: 3,
    TimeUnit.MINUTE_ONES: 4,
}


def _scan_for_image(grid: ChallengeGrid, image: int) -> GridCoord:
    """Find an image by scanning every row left to right, top to bottom."""
    for row in range(grid.spec.rows):
        for col in range(grid.spec.cols):
            if grid.cells[row * grid.spec.cols + col] == image:
                return GridCoord(col=col, row=row)
    raise ImageNotFoundError(f"image {image} is not in this challenge grid")


def _step_once(coord: GridCoord, direction: ShiftDirection, spec: GridSpec) -> GridCoord:
    """Move one cell, physically wrapping at the grid edge."""
    col, row = coord.col, coord.row
    if direction is ShiftDirection.UP:
        row = row - 1
        if row < 0:
            row = spec.rows - 1
    elif direction is ShiftDirection.DOWN:
        row = row + 1
        if row > spec.rows - 1:
            row = 0
    elif direction is ShiftDirection.LEFT:
        col = col - 1
        if col < 0:
            col = spec.cols - 1
    else:
        col = col + 1
        if col > spec.cols - 1:
            col = 0
    return GridCoord(col=col, row=row)


def _walk(coord: GridCoord, direction: ShiftDirection, steps: int, spec: GridSpec) -> GridCoord:
    for _ in range(steps):
        coord = _step_once(coord, direction, spec)
    return coord


def _intersection_in_row(row: int, target_col: int, spec: GridSpec) -> GridCoord:
    """Walk along a row until reaching the target column."""
    for col in range(spec.cols):
        if col == target_col:
            return GridCoord(col=col, row=row)
    raise ValueError(f"column {target_col} not on grid")


def clock_digit(time: ClockTime, unit: TimeUnit) -> int:
    """Read the selected digit off the rendered HH:MM text."""
    rendered = f"{time.hour:02d}:{time.minute:02d}"
    return int(rendered[_DIGIT_POSITION[unit]])


def oracle_derive(grid: ChallengeGrid, secret, time: ClockTime) -> PassImageResult:
    """Derive the two cells to click by exhaustive walking.

    `secret` is anything with `.images` (OrderedImagePair) and `.condition`
    (ShiftCondition) attributes.
    """
    spec = grid.spec
    first = _scan_for_image(grid, secret.images.first)
    second = _scan_for_image(grid, secret.images.second)
    if first == second:
        raise ValueError("password images occupy the same cell; grid is not a permutation")

    if first.col == second.col:
        scenario = Scenario.SAME_COLUMN
        inter_first = _step_once(first, ShiftDirection.DOWN, spec)
        inter_second = _step_once(second, ShiftDirection.DOWN, spec)
    elif first.row == second.row:
        scenario = Scenario.SAME_ROW
        inter_first = _step_once(first, ShiftDirection.RIGHT, spec)
        inter_second = _step_once(second, ShiftDirection.RIGHT, spec)
    else:
        scenario = Scenario.DIAGONAL
        inter_first = _intersection_in_row(first.row, second.col, spec)
        inter_second = _intersection_in_row(second.row, first.col, spec)

    steps = clock_digit(time, secret.condition.unit)
    final_first = _walk(inter_first, secret.condition.direction, steps, spec)
    final_second = _walk(inter_second, secret.condition.direction, steps, spec)

    return PassImageResult(
        scenario=scenario,
        intermediate=(inter_first, inter_second),
        final=(final_first, final_second),
        shift_magnitude=steps,
    )
