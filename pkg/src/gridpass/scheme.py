"""Value types for the password scheme: secrets, clocks, and derivation results."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import NamedTuple

from .grid import GridCoord, ImageId


class ShiftDirection(Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"


class TimeUnit(Enum):
    """Digit positions of the zero-padded 24-hour clock rendering HH:MM."""

    HOUR_TENS = "h1"
    HOUR_ONES = "h2"
    MINUTE_TENS = "m1"
    MINUTE_ONES = "m2"


@dataclass(frozen=True)
class ShiftCondition:
    """The secret shift rule: a direction and which clock digit sets the distance."""

    direction: ShiftDirection = ShiftDirection.UP
    unit: TimeUnit = TimeUnit.HOUR_TENS


@dataclass(frozen=True)
class ClockTime:
    hour: int
    minute: int

    def __post_init__(self) -> None:
        if not 0 <= self.hour < 24:
            raise ValueError(f"hour must be in [0, 24), got {self.hour}")
        if not 0 <= self.minute < 60:
            raise ValueError(f"minute must be in [0, 60), got {self.minute}")

    def __str__(self) -> str:
        return f"{self.hour:02d}:{self.minute:02d}"

    @classmethod
    def parse(cls, text: str) -> "ClockTime":
        parts = text.strip().split(":")
        if len(parts) != 2:
            raise ValueError(f"clock must look like HH:MM, got {text!r}")
        try:
            hour, minute = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"clock must look like HH:MM, got {text!r}") from None
        return cls(hour=hour, minute=minute)

    @classmethod
    def now(cls) -> "ClockTime":
        now = datetime.now()
        return cls(hour=now.hour, minute=now.minute)


@dataclass(frozen=True)
class OrderedImagePair:
    """The two registered password images, in registration order."""

    first: ImageId
    second: ImageId

    def __post_init__(self) -> None:
        if self.first == self.second:
            raise ValueError("password images must be distinct")
        if self.first < 0 or self.second < 0:
            raise ValueError("image ids must be non-negative")


class PasswordSecret(NamedTuple):
    """The engine-facing secret: image pair plus shift condition."""

    images: OrderedImagePair
    condition: ShiftCondition


class Scenario(Enum):
    """Spatial relation of the two password images on a challenge grid."""

    DIAGONAL = "diagonal"
    SAME_COLUMN = "same-column"
    SAME_ROW = "same-row"


@dataclass(frozen=True)
class PassImageResult:
    """Full derivation trace: rule used, intermediate cells, shift size, final cells.

    `final` holds the two cells the user must click, in order.
    """

    scenario: Scenario
    intermediate: tuple[GridCoord, GridCoord]
    final: tuple[GridCoord, GridCoord]
    shift_magnitude: int
