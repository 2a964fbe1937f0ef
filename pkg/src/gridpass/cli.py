"""Operator and analyst command line: account admin, explain mode, attack
experiments, frequency analysis, and the HTTP service.

Exit codes: 0 success, 1 domain error, 2 usage error. Every command is
deterministic under --seed; without it a fresh seed is drawn and echoed so
runs stay reproducible after the fact.
"""

from __future__ import annotations

import json
import random
import secrets as secrets_module
import sys
from pathlib import Path
from typing import Optional

import click

from . import attack as attack_lab
from .catalog import bundled_catalog
from .engine import derive_pass_images
from .errors import GridPassError
from .grid import GridSpec, generate_challenge
from .scheme import ClockTime, ShiftCondition, ShiftDirection, TimeUnit
from .service import AuthService
from .store import AccountStore, register_account

DIRECTION_CHOICES = [d.value for d in ShiftDirection]
TIME_UNIT_CHOICES = [u.value for u in TimeUnit]
MODE_CHOICES = [m.value for m in attack_lab.AttackMode]


@click.group()
@click.option(
    "--store",
    "store_path",
    type=click.Path(path_type=Path),
    default=Path("accounts.json"),
    envvar="GRIDPASS_STORE",
    show_default=True,
    help="Account store file.",
)
@click.option("--seed", type=int, default=None, help="Seed for all randomness.")
@click.option("--json", "json_output", is_flag=True, help="Machine-readable output.")
@click.pass_context
def main(ctx: click.Context, store_path: Path, seed: Optional[int], json_output: bool) -> None:
    """Graphical password service with a challenge-derivation engine and attack lab."""
    ctx.obj = {
        "store_path": store_path,
        "seed": seed if seed is not None else secrets_module.randbelow(2**32),
        "seed_given": seed is not None,
        "json": json_output,
    }


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@main.command()
@click.option("--user-id", required=True)
@click.option("--images", required=True, help="Two catalog image ids, e.g. '3,17'.")
@click.option("--direction", type=click.Choice(DIRECTION_CHOICES), default="up", show_default=True)
@click.option("--time-unit", type=click.Choice(TIME_UNIT_CHOICES), default="h1", show_default=True)
@click.pass_obj
def register(obj: dict, user_id: str, images: str, direction: str, time_unit: str) -> None:
    """Register an account: user id, two password images, shift condition."""
    try:
        image_ids = [int(part) for part in images.split(",") if part.strip() != ""]
    except ValueError:
        raise click.UsageError(f"--images must be comma-separated integers, got {images!r}")
    condition = ShiftCondition(direction=ShiftDirection(direction), unit=TimeUnit(time_unit))
    try:
        store = AccountStore(obj["store_path"])
        record = register_account(store, user_id, image_ids, condition)
    except GridPassError as exc:
        _fail(str(exc))
    if obj["json"]:
        click.echo(
            json.dumps(
                {
                    "user_id": record.user_id,
                    "image_ids": [record.images.first, record.images.second],
                    "direction": record.condition.direction.value,
                    "time_unit": record.condition.unit.value,
                    "store": str(obj["store_path"]),
                }
            )
        )
    else:
        click.echo(f"registered {record.user_id!r} in {obj['store_path']}")


def _render_grid_rows(cells, spec: GridSpec) -> list[str]:
    rows = []
    for row in range(spec.rows):
        chunk = cells[row * spec.cols : (row + 1) * spec.cols]
        rows.append("  " + " ".join(f"{cell:2d}" for cell in chunk))
    return rows


@main.command()
@click.option("--user-id", required=True)
@click.option("--clock", "clock_text", default=None, help="Override the wall clock, e.g. '12:38'.")
@click.pass_obj
def explain(obj: dict, user_id: str, clock_text: Optional[str]) -> None:
    """Walk one challenge round step by step for a registered user.

    A training aid and an audit tool: prints the grid, the password-image
    cells, the substitution rule applied, the intermediate cells, the
    clock digit, and the final cells to click.
    """
    try:
        store = AccountStore(obj["store_path"], must_exist=True)
    except GridPassError as exc:
        _fail(str(exc))
    record = store.lookup(user_id)
    if record is None:
        _fail(f"unknown user id {user_id!r}")
    clock = ClockTime.parse(clock_text) if clock_text else ClockTime.now()

    seed = obj["seed"]
    rng = random.Random(seed)
    catalog = bundled_catalog()
    spec = GridSpec(5, 5)
    grid = generate_challenge(spec, catalog.image_ids, rng)
    result = derive_pass_images(grid, record, clock)
    c1 = grid.locate(record.images.first)
    c2 = grid.locate(record.images.second)
    final_indices = [spec.coord_to_index(c) for c in result.final]

    if obj["json"]:
        click.echo(
            json.dumps(
                {
                    "seed": seed,
                    "clock": str(clock),
                    "grid": list(grid.cells),
                    "password_cells": [list(c1), list(c2)],
                    "rule": result.scenario.value,
                    "intermediate_cells": [list(c) for c in result.intermediate],
                    "shift": {
                        "direction": record.condition.direction.value,
                        "time_unit": record.condition.unit.value,
                        "magnitude": result.shift_magnitude,
                    },
                    "final_cells": [list(c) for c in result.final],
                    "final_cell_indices": final_indices,
                }
            )
        )
        return

    def coord_text(coord) -> str:
        return f"(col {coord.col}, row {coord.row})"

    lines = [
        f"seed: {seed}",
        f"clock: {clock}",
        "challenge grid (image ids, rows top to bottom):",
        *_render_grid_rows(grid.cells, spec),
        (
            f"password image {record.images.first} ({catalog.label_of(record.images.first)}) "
            f"at {coord_text(c1)}; "
            f"password image {record.images.second} ({catalog.label_of(record.images.second)}) "
            f"at {coord_text(c2)}"
        ),
        f"rule: {result.scenario.value}",
        f"intermediate cells: {coord_text(result.intermediate[0])}, {coord_text(result.intermediate[1])}",
        (
            f"shift: {record.condition.direction.value} by {result.shift_magnitude} "
            f"(clock digit {record.condition.unit.value} of {clock})"
        ),
        (
            f"final cells to click: {coord_text(result.final[0])} [index {final_indices[0]}], "
            f"{coord_text(result.final[1])} [index {final_indices[1]}]"
        ),
    ]
    click.echo("\n".join(lines))


@main.command(name="attack")
@click.option("--mode", type=click.Choice(MODE_CHOICES), default="dsr-shift", show_default=True)
@click.option("--observations", type=int, default=1, show_default=True)
@click.option("--trials", type=int, default=0, show_default=True, help="Monte Carlo guessing trials (0 = skip).")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=None)
@click.pass_obj
def attack_command(
    obj: dict, mode: str, observations: int, trials: int, out_dir: Optional[Path]
) -> None:
    """Enumerate the secret space against observed logins and report survivors."""
    if observations < 0:
        raise click.UsageError("--observations must be >= 0")
    attack_mode = attack_lab.AttackMode(mode)
    seed = obj["seed"]
    try:
        experiment = attack_lab.run_filter_experiment(attack_mode, observations, seed)
    except GridPassError as exc:
        _fail(str(exc))
    report = experiment.report

    document = attack_lab.experiment_to_json(experiment)
    if trials > 0:
        rng = random.Random(seed + 1)
        rates = {
            "uniform_random": attack_lab.guess_success_rate(
                attack_lab.GuessStrategy.UNIFORM_RANDOM,
                experiment.victim,
                trials,
                rng,
                mode=attack_mode,
            )
        }
        if experiment.observations:
            rates["replay_clicked_images"] = attack_lab.guess_success_rate(
                attack_lab.GuessStrategy.REPLAY_CLICKED_IMAGES,
                experiment.victim,
                trials,
                rng,
                observations=experiment.observations,
                mode=attack_mode,
            )
            rates["posterior_uniform"] = attack_lab.guess_success_rate(
                attack_lab.GuessStrategy.POSTERIOR_UNIFORM,
                experiment.victim,
                trials,
                rng,
                observations=experiment.observations,
                mode=attack_mode,
            )
        document["guess_success_rates"] = rates
        document["guess_trials"] = trials

    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        json_path = out_dir / "report.json"
        csv_path = out_dir / "survivors.csv"
        Path(json_path).write_text(json.dumps(document, indent=2) + "\n")
        attack_lab.write_survivor_csv(experiment, csv_path)

    if obj["json"]:
        click.echo(json.dumps(document))
        return

    click.echo(f"mode: {attack_mode.value}   seed: {seed}")
    click.echo(f"{'observation':>12}  {'survivors':>9}")
    click.echo(f"{0:>12}  {report.initial_count:>9}")
    for i, count in enumerate(report.survivor_counts, start=1):
        click.echo(f"{i:>12}  {count:>9}")
    if trials > 0:
        for name, rate in document["guess_success_rates"].items():
            click.echo(f"guess rate ({name}, {trials} trials): {rate:.6f}")
    if out_dir is not None:
        click.echo(f"reports written to {out_dir}")


@main.command()
@click.option("--sessions", type=int, default=1000, show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
@click.pass_obj
def foa(obj: dict, sessions: int, out_path: Optional[Path]) -> None:
    """Frequency-of-occurrence analysis over simulated sessions of one victim."""
    if sessions < 1:
        raise click.UsageError("--sessions must be >= 1")
    seed = obj["seed"]
    rng = random.Random(seed)
    victim = attack_lab.random_secret(rng)
    observations = [
        attack_lab.simulate_victim_session(victim, attack_lab.random_clock(rng), rng)
        for _ in range(sessions)
    ]
    report = attack_lab.foa_report(observations)
    appearance_values = set(report.appearance_counts.values())
    document = {
        "seed": seed,
        "sessions": report.sessions,
        "appearance_uniform": appearance_values == {report.sessions},
        "appearance_counts": {str(k): v for k, v in sorted(report.appearance_counts.items())},
        "click_counts": {str(k): v for k, v in sorted(report.click_counts.items())},
        "click_chi_square": report.click_chi_square,
        "degrees_of_freedom": report.degrees_of_freedom,
    }
    if out_path is not None:
        out_path.write_text(json.dumps(document, indent=2) + "\n")
    if obj["json"]:
        click.echo(json.dumps(document))
    else:
        click.echo(f"seed: {seed}   sessions: {report.sessions}")
        click.echo(
            "appearance counts uniform: "
            + ("yes" if document["appearance_uniform"] else "NO — permutation premise violated")
        )
        click.echo(
            f"click histogram chi-square: {report.click_chi_square:.2f} "
            f"({report.degrees_of_freedom} degrees of freedom)"
        )
        if out_path is not None:
            click.echo(f"report written to {out_path}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--session-timeout", type=float, default=600.0, show_default=True)
@click.option("--clock", "clock_text", default=None, help="Freeze the clock (test mode).")
@click.option(
    "--frontend",
    "frontend_dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Directory of built web UI assets to serve at /.",
)
@click.pass_obj
def serve(
    obj: dict,
    host: str,
    port: int,
    session_timeout: float,
    clock_text: Optional[str],
    frontend_dir: Optional[Path],
) -> None:
    """Run the authentication service until interrupted.

    With --seed the challenge stream is deterministic: the first challenge
    issued equals the grid `explain` prints for the same seed.
    """
    import uvicorn

    from .api import create_app

    try:
        store = AccountStore(obj["store_path"], must_exist=True)
    except GridPassError as exc:
        _fail(str(exc))
    catalog = bundled_catalog()
    rng = random.Random(obj["seed"]) if obj["seed_given"] else None
    clock_source = None
    if clock_text is not None:
        frozen = ClockTime.parse(clock_text)
        clock_source = lambda: frozen
    service = AuthService(
        store,
        catalog.image_ids,
        rng=rng,
        clock_source=clock_source,
        session_timeout=session_timeout,
    )
    app = create_app(store, catalog, service, frontend_dir=frontend_dir)
    click.echo(f"serving on http://{host}:{port} (store: {obj['store_path']})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
