"""Core derivation: digraph substitution rules plus the clock-digit shift.

Given where the two password images landed on a challenge grid, the rules
produce two intermediate cells; the shift condition then moves both by the
selected clock digit to give the cells the user must click, in order.

Axis convention: (col, row) with origin top-left and row growing downward,
so an UP shift subtracts from the row. All wraparound is true mathematical
modulo. See oracle.py for the independent cell-walking reference.
"""

from __future__ import annotations

from .grid import ChallengeGrid, GridCoord, GridSpec
from .scheme import (
    ClockTime,
    PassImageResult,
    Scenario,
    ShiftDirection,
    TimeUnit,
)


def _require_shiftable(spec: GridSpec) -> None:
    # Substitution rules and wraparound need at least two cells per axis.
    if spec.cols < 2 or spec.rows < 2:
        raise ValueError(f"substitution rules need a grid of at least 2x2, got {spec.cols}x{spec.rows}")


def classify_scenario(c1: GridCoord, c2: GridCoord) -> Scenario:
    """Spatial relation of the two password-image cells.

    Column equality is checked before row equality; distinct cells can
    never satisfy both.
    """
    if c1 == c2:
        raise ValueError("password image cells must be distinct")
    if c1.col == c2.col:
        return Scenario.SAME_COLUMN
    if c1.row == c2.row:
        return Scenario.SAME_ROW
    return Scenario.DIAGONAL


def dsr_intermediate(
    c1: GridCoord, c2: GridCoord, spec: GridSpec
) -> tuple[GridCoord, GridCoord]:
    """Intermediate cells under the substitution rules.

    Diagonal: rectangle corners; the first intermediate keeps the first
    cell's row and takes the second cell's column, and vice versa.
    Same column: one row down, wrapping bottom to top.
    Same row: one column right, wrapping right edge to left.
    """
    _require_shiftable(spec)
    scenario = classify_scenario(c1, c2)
    if scenario is Scenario.DIAGONAL:
        return (
            GridCoord(col=c2.col, row=c1.row),
            GridCoord(col=c1.col, row=c2.row),
        )
    if scenario is Scenario.SAME_COLUMN:
        return (
            GridCoord(col=c1.col, row=(c1.row + 1) % spec.rows),
            GridCoord(col=c2.col, row=(c2.row + 1) % spec.rows),
        )
    return (
        GridCoord(col=(c1.col + 1) % spec.cols, row=c1.row),
        GridCoord(col=(c2.col + 1) % spec.cols, row=c2.row),
    )


def extract_time_digit(time: ClockTime, unit: TimeUnit) -> int:
    """Digit of the zero-padded HH:MM rendering at the selected position."""
    if unit is TimeUnit.HOUR_TENS:
        return time.hour // 10
    if unit is TimeUnit.HOUR_ONES:
        return time.hour % 10
    if unit is TimeUnit.MINUTE_TENS:
        return time.minute // 10
    return time.minute % 10


def apply_shift(
    coord: GridCoord, direction: ShiftDirection, t: int, spec: GridSpec
) -> GridCoord:
    """Move `t` cells in `direction`, wrapping modulo the axis length."""
    if not spec.contains(coord):
        raise ValueError(f"coordinate {coord} out of bounds for {spec.cols}x{spec.rows} grid")
    if t < 0:
        raise ValueError(f"shift magnitude must be non-negative, got {t}")
    if direction is ShiftDirection.UP:
        return GridCoord(col=coord.col, row=(coord.row - t) % spec.rows)
    if direction is ShiftDirection.DOWN:
        return GridCoord(col=coord.col, row=(coord.row + t) % spec.rows)
    if direction is ShiftDirection.LEFT:
        return GridCoord(col=(coord.col - t) % spec.cols, row=coord.row)
    return GridCoord(col=(coord.col + t) % spec.cols, row=coord.row)


def derive_pass_images(grid: ChallengeGrid, secret, time: ClockTime) -> PassImageResult:
    """Full derivation for one challenge: locate, substitute, shift.

    `secret` is anything with `.images` (OrderedImagePair) and `.condition`
    (ShiftCondition) attributes. Returns the complete trace including the
    intermediate cells so callers can explain or analyze a round.
    """
    _require_shiftable(grid.spec)
    c1 = grid.locate(secret.images.first)
    c2 = grid.locate(secret.images.second)
    scenario = classify_scenario(c1, c2)
    inter = dsr_intermediate(c1, c2, grid.spec)
    t = extract_time_digit(time, secret.condition.unit)
    final = (
        apply_shift(inter[0], secret.condition.direction, t, grid.spec),
        apply_shift(inter[1], secret.condition.direction, t, grid.spec),
    )
    return PassImageResult(
        scenario=scenario,
        intermediate=inter,
        final=final,
        shift_magnitude=t,
    )


def expected_click_indices(grid: ChallengeGrid, secret, time: ClockTime) -> tuple[int, int]:
    """Row-major cell indices of the two required clicks, in order."""
    result = derive_pass_images(grid, secret, time)
    return (
        grid.spec.coord_to_index(result.final[0]),
        grid.spec.coord_to_index(result.final[1]),
    )
