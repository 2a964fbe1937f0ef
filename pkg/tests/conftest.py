from __future__ import annotations

import random

import pytest

from gridpass.grid import GridSpec
from gridpass.scheme import (
    ClockTime,
    OrderedImagePair,
    PasswordSecret,
    ShiftCondition,
    ShiftDirection,
    TimeUnit,
)

CATALOG_IDS = tuple(range(25))

ALL_CONDITIONS = [
    ShiftCondition(direction=direction, unit=unit)
    for direction in ShiftDirection
    for unit in TimeUnit
]


@pytest.fixture
def spec() -> GridSpec:
    return GridSpec(5, 5)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20230617)


def random_secret(rng: random.Random) -> PasswordSecret:
    first, second = rng.sample(range(25), 2)
    return PasswordSecret(
        images=OrderedImagePair(first=first, second=second),
        condition=ShiftCondition(
            direction=rng.choice(list(ShiftDirection)),
            unit=rng.choice(list(TimeUnit)),
        ),
    )


def random_clock(rng: random.Random) -> ClockTime:
    minute_of_day = rng.randrange(24 * 60)
    return ClockTime(hour=minute_of_day // 60, minute=minute_of_day % 60)
