"""Shoulder-surfing adversary simulation and analysis.

The attacker model is Kerckhoffs-style: the algorithm, the grid contents,
the clicked cells, and the displayed clock are all known. The only
uncertainty is the secret itself, so an informed attacker's best move is to
enumerate every candidate secret and keep the ones consistent with what was
observed. On a 5x5 grid that space is 25*24 ordered image pairs times 4
directions times 4 time units = 9,600 candidates; with shifting disabled
(the earlier substitution-only scheme) it is just the 600 pairs.
"""

from __future__ import annotations

import csv
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .engine import derive_pass_images, expected_click_indices
from .grid import ChallengeGrid, GridSpec, ImageId, generate_challenge
from .scheme import (
    ClockTime,
    OrderedImagePair,
    PasswordSecret,
    ShiftCondition,
    ShiftDirection,
    TimeUnit,
)

DEFAULT_SPEC = GridSpec(5, 5)
DEFAULT_CATALOG_IDS = tuple(range(25))


class AttackMode(Enum):
    # Substitution rules alone, shift disabled: the prior scheme this one hardens.
    DSR_ONLY = "dsr-only"
    DSR_PLUS_SHIFT = "dsr-shift"


@dataclass(frozen=True)
class Observation:
    """What a shoulder-surfer takes away from one watched login."""

    grid: ChallengeGrid
    clicks: tuple[int, int]
    clock: ClockTime

    def __post_init__(self) -> None:
        count = self.grid.spec.cell_count
        for click in self.clicks:
            if not 0 <= click < count:
                raise ValueError(f"clicked cell {click} outside grid of {count}")
        if self.clicks[0] == self.clicks[1]:
            raise ValueError("clicked cells must be distinct")


@dataclass(frozen=True)
class Hypothesis:
    """A candidate secret. `condition` is None in shift-disabled mode."""

    pair: OrderedImagePair
    condition: Optional[ShiftCondition]


@dataclass
class FilterReport:
    mode: AttackMode
    initial_count: int
    survivor_counts: list[int]
    final_candidates: list[Hypothesis]
    appearance_counts: dict[ImageId, int]
    click_counts: dict[ImageId, int]
    seed: Optional[int] = None
    victim: Optional[Hypothesis] = None


@dataclass
class FoaReport:
    """Frequency-of-occurrence analysis over a batch of observed sessions."""

    sessions: int
    appearance_counts: dict[ImageId, int]
    click_counts: dict[ImageId, int]
    click_chi_square: float
    degrees_of_freedom: int


class GuessStrategy(Enum):
    UNIFORM_RANDOM = "uniform-random"
    REPLAY_CLICKED_IMAGES = "replay-clicked-images"
    POSTERIOR_UNIFORM = "posterior-uniform"


def random_clock(rng: random.Random) -> ClockTime:
    """Uniform over the 1,440 minutes of a day."""
    minute_of_day = rng.randrange(24 * 60)
    return ClockTime(hour=minute_of_day // 60, minute=minute_of_day % 60)


def random_secret(rng: random.Random, *, catalog_size: int = 25) -> PasswordSecret:
    first, second = rng.sample(range(catalog_size), 2)
    return PasswordSecret(
        images=OrderedImagePair(first=first, second=second),
        condition=ShiftCondition(
            direction=rng.choice(list(ShiftDirection)),
            unit=rng.choice(list(TimeUnit)),
        ),
    )


def enumerate_hypotheses(mode: AttackMode, *, catalog_size: int = 25) -> list[Hypothesis]:
    """The full candidate space, in a fixed canonical order."""
    pairs = [
        OrderedImagePair(first=a, second=b)
        for a in range(catalog_size)
        for b in range(catalog_size)
        if a != b
    ]
    if mode is AttackMode.DSR_ONLY:
        return [Hypothesis(pair=pair, condition=None) for pair in pairs]
    return [
        Hypothesis(pair=pair, condition=ShiftCondition(direction=direction, unit=unit))
        for pair in pairs
        for direction in ShiftDirection
        for unit in TimeUnit
    ]


def _clicks_for(
    grid: ChallengeGrid,
    pair: OrderedImagePair,
    condition: Optional[ShiftCondition],
    clock: ClockTime,
    mode: AttackMode,
) -> tuple[int, int]:
    """Cells a user holding this secret would click, honoring the mode."""
    if mode is AttackMode.DSR_ONLY:
        # Shift suppressed: the intermediate cells are the answer.
        result = derive_pass_images(
            grid, PasswordSecret(images=pair, condition=ShiftCondition()), clock
        )
        return (
            grid.spec.coord_to_index(result.intermediate[0]),
            grid.spec.coord_to_index(result.intermediate[1]),
        )
    assert condition is not None
    return expected_click_indices(grid, PasswordSecret(images=pair, condition=condition), clock)


def simulate_victim_session(
    secret: PasswordSecret,
    clock: ClockTime,
    rng: random.Random,
    *,
    mode: AttackMode = AttackMode.DSR_PLUS_SHIFT,
    spec: GridSpec = DEFAULT_SPEC,
    catalog_ids: Sequence[ImageId] = DEFAULT_CATALOG_IDS,
) -> Observation:
    """One watched login: fresh challenge, the victim's correct clicks, the clock."""
    grid = generate_challenge(spec, catalog_ids, rng)
    clicks = _clicks_for(grid, secret.images, secret.condition, clock, mode)
    return Observation(grid=grid, clicks=clicks, clock=clock)


def consistent(hypothesis: Hypothesis, observation: Observation, mode: AttackMode) -> bool:
    """Would this candidate secret have produced exactly the observed clicks?"""
    derived = _clicks_for(
        observation.grid, hypothesis.pair, hypothesis.condition, observation.clock, mode
    )
    return derived == observation.clicks


def _histograms(
    observations: Sequence[Observation],
) -> tuple[dict[ImageId, int], dict[ImageId, int]]:
    appearance: dict[ImageId, int] = {}
    clicks: dict[ImageId, int] = {}
    for obs in observations:
        for image in obs.grid.cells:
            appearance[image] = appearance.get(image, 0) + 1
        for cell in obs.clicks:
            image = obs.grid.cells[cell]
            clicks[image] = clicks.get(image, 0) + 1
    return appearance, clicks


def filter_hypotheses(
    observations: Sequence[Observation],
    mode: AttackMode,
    *,
    catalog_size: int = 25,
    true_secret: Optional[PasswordSecret] = None,
    partitions: int = 1,
) -> FilterReport:
    """Intersect the candidate space against each observation in order.

    With `partitions` > 1 the space is split into chunks filtered
    independently (thread pool) and merged; the result is identical to the
    sequential run. When `true_secret` is supplied, its survival is
    asserted after every round.
    """
    if not observations:
        raise ValueError("at least one observation is required")
    survivors = enumerate_hypotheses(mode, catalog_size=catalog_size)
    initial_count = len(survivors)
    counts: list[int] = []

    truth: Optional[Hypothesis] = None
    if true_secret is not None:
        truth = Hypothesis(
            pair=true_secret.images,
            condition=None if mode is AttackMode.DSR_ONLY else true_secret.condition,
        )

    for observation in observations:
        if partitions <= 1 or len(survivors) < partitions:
            survivors = [h for h in survivors if consistent(h, observation, mode)]
        else:
            chunk_size = (len(survivors) + partitions - 1) // partitions
            chunks = [
                survivors[i : i + chunk_size] for i in range(0, len(survivors), chunk_size)
            ]
            with ThreadPoolExecutor(max_workers=partitions) as pool:
                filtered = pool.map(
                    lambda chunk: [h for h in chunk if consistent(h, observation, mode)],
                    chunks,
                )
                survivors = [h for chunk in filtered for h in chunk]
        counts.append(len(survivors))
        if truth is not None and truth not in survivors:
            raise AssertionError(
                "true secret eliminated by a genuine observation; filtering is unsound"
            )

    appearance, clicks = _histograms(observations)
    return FilterReport(
        mode=mode,
        initial_count=initial_count,
        survivor_counts=counts,
        final_candidates=survivors,
        appearance_counts=appearance,
        click_counts=clicks,
    )


def dsr_leakage_check(observation: Observation, secret: PasswordSecret) -> bool:
    """Does the observation place both password cells in the rows/columns
    of the clicked cells?

    With shifting disabled this holds for every session, which is exactly
    the leak that lets repeated observations strip the prior scheme.
    """
    spec = observation.grid.spec
    clicked = [spec.index_to_coord(c) for c in observation.clicks]
    clicked_rows = {c.row for c in clicked}
    clicked_cols = {c.col for c in clicked}
    for image in (secret.images.first, secret.images.second):
        cell = observation.grid.locate(image)
        if cell.row not in clicked_rows and cell.col not in clicked_cols:
            return False
    return True


def foa_report(observations: Sequence[Observation]) -> FoaReport:
    """Appearance and click histograms with a chi-square uniformity statistic."""
    if not observations:
        raise ValueError("at least one observation is required")
    catalog_size = observations[0].grid.spec.cell_count
    appearance, clicks = _histograms(observations)
    total_clicks = 2 * len(observations)
    expected = total_clicks / catalog_size
    chi_square = sum(
        (clicks.get(image, 0) - expected) ** 2 / expected for image in range(catalog_size)
    )
    return FoaReport(
        sessions=len(observations),
        appearance_counts=appearance,
        click_counts=clicks,
        click_chi_square=chi_square,
        degrees_of_freedom=catalog_size - 1,
    )


def guess_success_rate(
    strategy: GuessStrategy,
    secret: PasswordSecret,
    trials: int,
    rng: random.Random,
    *,
    observations: Sequence[Observation] = (),
    mode: AttackMode = AttackMode.DSR_PLUS_SHIFT,
    clock: Optional[ClockTime] = None,
    spec: GridSpec = DEFAULT_SPEC,
    catalog_ids: Sequence[ImageId] = DEFAULT_CATALOG_IDS,
) -> float:
    """Monte Carlo success probability of a guessing strategy on fresh challenges.

    Each trial draws a new challenge (and a new clock unless one is fixed),
    lets the strategy pick an ordered cell pair, and scores it against the
    clicks the real secret requires.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if strategy in (GuessStrategy.REPLAY_CLICKED_IMAGES, GuessStrategy.POSTERIOR_UNIFORM):
        if not observations:
            raise ValueError(f"strategy {strategy.value} needs at least one observation")

    survivors: list[Hypothesis] = []
    if strategy is GuessStrategy.POSTERIOR_UNIFORM:
        survivors = filter_hypotheses(observations, mode).final_candidates
        if not survivors:
            raise ValueError("no surviving hypotheses to guess from")

    successes = 0
    for _ in range(trials):
        grid = generate_challenge(spec, catalog_ids, rng)
        trial_clock = clock if clock is not None else random_clock(rng)
        truth = _clicks_for(grid, secret.images, secret.condition, trial_clock, mode)

        if strategy is GuessStrategy.UNIFORM_RANDOM:
            guess = tuple(rng.sample(range(spec.cell_count), 2))
        elif strategy is GuessStrategy.REPLAY_CLICKED_IMAGES:
            demo = observations[-1]
            images = (demo.grid.cells[demo.clicks[0]], demo.grid.cells[demo.clicks[1]])
            guess = (
                grid.spec.coord_to_index(grid.locate(images[0])),
                grid.spec.coord_to_index(grid.locate(images[1])),
            )
        else:
            hypothesis = rng.choice(survivors)
            guess = _clicks_for(grid, hypothesis.pair, hypothesis.condition, trial_clock, mode)

        if guess == truth:
            successes += 1
    return successes / trials


@dataclass
class FilterExperiment:
    """A seeded end-to-end filtering run, ready for serialization."""

    mode: AttackMode
    seed: int
    victim: PasswordSecret
    observations: list[Observation]
    report: FilterReport


def run_filter_experiment(
    mode: AttackMode,
    n_observations: int,
    seed: int,
    *,
    victim: Optional[PasswordSecret] = None,
    spec: GridSpec = DEFAULT_SPEC,
    catalog_ids: Sequence[ImageId] = DEFAULT_CATALOG_IDS,
    partitions: int = 1,
) -> FilterExperiment:
    """Simulate a victim, watch `n_observations` logins, filter the space.

    With zero observations the report is the untouched baseline space.
    """
    rng = random.Random(seed)
    if victim is None:
        victim = random_secret(rng, catalog_size=len(catalog_ids))
    observations = [
        simulate_victim_session(
            victim, random_clock(rng), rng, mode=mode, spec=spec, catalog_ids=catalog_ids
        )
        for _ in range(n_observations)
    ]
    if observations:
        report = filter_hypotheses(
            observations,
            mode,
            catalog_size=len(catalog_ids),
            true_secret=victim,
            partitions=partitions,
        )
    else:
        baseline = enumerate_hypotheses(mode, catalog_size=len(catalog_ids))
        report = FilterReport(
            mode=mode,
            initial_count=len(baseline),
            survivor_counts=[],
            final_candidates=baseline,
            appearance_counts={},
            click_counts={},
        )
    report.seed = seed
    report.victim = Hypothesis(
        pair=victim.images,
        condition=None if mode is AttackMode.DSR_ONLY else victim.condition,
    )
    return FilterExperiment(
        mode=mode, seed=seed, victim=victim, observations=observations, report=report
    )


def _hypothesis_to_json(hypothesis: Hypothesis) -> dict:
    entry: dict = {
        "first": hypothesis.pair.first,
        "second": hypothesis.pair.second,
    }
    if hypothesis.condition is not None:
        entry["direction"] = hypothesis.condition.direction.value
        entry["time_unit"] = hypothesis.condition.unit.value
    return entry


MAX_SERIALIZED_CANDIDATES = 2000


def experiment_to_json(experiment: FilterExperiment) -> dict:
    """JSON-ready report document (schema documented in the README)."""
    report = experiment.report
    candidates: Optional[list[dict]] = None
    if len(report.final_candidates) <= MAX_SERIALIZED_CANDIDATES:
        candidates = [_hypothesis_to_json(h) for h in report.final_candidates]
    return {
        "mode": report.mode.value,
        "seed": report.seed,
        "victim": _hypothesis_to_json(report.victim) if report.victim else None,
        "initial_count": report.initial_count,
        "survivor_counts": report.survivor_counts,
        "final_survivor_count": (
            report.survivor_counts[-1] if report.survivor_counts else report.initial_count
        ),
        "final_candidates": candidates,
        "appearance_counts": {str(k): v for k, v in sorted(report.appearance_counts.items())},
        "click_counts": {str(k): v for k, v in sorted(report.click_counts.items())},
        "observations": [
            {
                "grid": list(obs.grid.cells),
                "clicks": list(obs.clicks),
                "clock": str(obs.clock),
            }
            for obs in experiment.observations
        ],
    }


def write_report_json(experiment: FilterExperiment, path: str | Path) -> None:
    Path(path).write_text(json.dumps(experiment_to_json(experiment), indent=2) + "\n")


def write_survivor_csv(experiment: FilterExperiment, path: str | Path) -> None:
    """Survivor-count curve: row 0 is the untouched baseline space."""
    report = experiment.report
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["observation_index", "survivors", "mode", "seed"])
        writer.writerow([0, report.initial_count, report.mode.value, report.seed])
        for i, count in enumerate(report.survivor_counts, start=1):
            writer.writerow([i, count, report.mode.value, report.seed])
