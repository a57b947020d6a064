"""Command-line entry point: library operations and experiment runners."""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional

import typer
from pydantic import ValidationError
from rich.logging import RichHandler

from app.packages.base.errors import BlotlessError, ConfigError, NumericalFailureError
from app.packages.bounds import bounds_table, round_half_away
from app.packages.eval import recovery_error
from app.packages.experiments import RUNNERS
from app.packages.model import Dictionary, SparseCoeffs, TrainingSet, project_to_pattern
from app.packages.models_generated import (
    ExperimentKind,
    GenConfig,
    LearnConfig,
    OmpConfig,
    UpdateConfig,
    UpdateMethod,
)
from app.packages.numerics import read_matrix, write_matrix
from app.packages.orchestration import resolve_spec
from app.packages.synth import corrupt_pattern, gen_training_set
from app.packages.update import learn, random_dictionary, update_dictionary, write_history_csv
from app.packages.worker import TrialPoolError


logger = logging.getLogger(__name__)

app = typer.Typer(help="BLOTLESS dictionary learning: bounds, solvers and experiment runners.")

EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_INTERNAL = 3


class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log per-iteration detail"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only log warnings and errors"),
) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
        force=True,
    )


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except (ConfigError, ValidationError) as exc:
        typer.echo(f"Configuration error: {exc}", err=True)
        raise typer.Exit(code=EXIT_CONFIG) from exc
    except NumericalFailureError as exc:
        typer.echo(f"Numerical failure: {exc}", err=True)
        raise typer.Exit(code=EXIT_NUMERICAL) from exc
    except TrialPoolError as exc:
        typer.echo(f"Trial failure: {exc}", err=True)
        raise typer.Exit(code=EXIT_INTERNAL) from exc
    except BlotlessError as exc:
        typer.echo(f"Internal error: {exc}", err=True)
        raise typer.Exit(code=EXIT_INTERNAL) from exc


def _parse_list(raw: str, cast: type, name: str) -> list:
    try:
        return [cast(token) for token in raw.split(",") if token.strip()]
    except ValueError as exc:
        raise ConfigError(f"--{name} expects a comma-separated list, got {raw!r}") from exc


@app.command()
def bounds(
    m: str = typer.Option(..., "--m", help="Signal dimension(s), e.g. 30 or 15,20,25,30"),
    theta: str = typer.Option(..., "--theta", help="Sparsity ratio(s), e.g. 0.2 or 0.1,0.2"),
    epsilon: float = typer.Option(0.01, "--epsilon", help="Failure probability"),
    output: OutputFormat = typer.Option(OutputFormat.TABLE, "--format", help="json or table"),
) -> None:
    """Sample-count lower bounds n0..n3 and n_star for every (m, theta)."""

    with _exit_codes():
        reports = bounds_table(_parse_list(m, int, "m"), _parse_list(theta, float, "theta"), epsilon)
        if output is OutputFormat.JSON:
            typer.echo(json.dumps([report.model_dump() for report in reports], indent=2))
            return
        header = f"{'m':>5} {'theta':>7} {'n0':>9} {'n1':>9} {'n2':>9} {'n3':>9} {'n_star':>7} {'limit':>7}"
        typer.echo(header)
        for r in reports:
            typer.echo(
                f"{r.m:>5} {r.theta:>7.3f} {r.n0:>9.2f} {r.n1:>9.2f} {r.n2:>9.2f} {r.n3:>9.2f} "
                f"{r.n_star_rounded:>7} {r.asymptotic_threshold:>7.3f}"
            )


@app.command()
def gen(
    m: int = typer.Option(..., "--m"),
    n: int = typer.Option(..., "--n"),
    theta: float = typer.Option(..., "--theta"),
    atoms: Optional[int] = typer.Option(None, "--l", help="Atom count; defaults to m"),
    snr_db: Optional[float] = typer.Option(None, "--snr-db", help="Additive noise level; omit for noise-free"),
    seed: int = typer.Option(0, "--seed"),
    out: Path = typer.Option(..., "--out", help="Directory for Y.txt, D0.txt, X0.txt and pattern.json"),
) -> None:
    """Generate a seeded synthetic training set with ground truth."""

    with _exit_codes():
        cfg = GenConfig(m=m, l=atoms or m, n=n, theta=theta, seed=seed, snr_db=snr_db)
        target = gen_training_set(cfg).export(out)
        typer.echo(f"Training set written to {target}")


def _load_training(data: Path) -> TrainingSet:
    training = TrainingSet.load(data)
    logger.info("Loaded %dx%d training set from %s", training.m, training.n, data)
    return training


def _report_recovery(training: TrainingSet, d: Dictionary) -> None:
    if training.ground_truth is None:
        return
    d0 = training.ground_truth[0]
    if d0.atoms.shape != d.atoms.shape:
        return
    typer.echo(f"r_err: {recovery_error(d, d0).r_err:.6e}")


@app.command("learn")
def learn_command(
    data: Path = typer.Option(..., "--data", help="Training set directory written by `gen`"),
    method: UpdateMethod = typer.Option(UpdateMethod.BLOTLESS_ITERTLS, "--method"),
    atoms: Optional[int] = typer.Option(None, "--l", help="Atom count; defaults to the ground truth's or m"),
    iterations: int = typer.Option(50, "--iterations"),
    k: Optional[int] = typer.Option(None, "--k", help="OMP sparsity; defaults to round(theta * l)"),
    block_size: Optional[int] = typer.Option(None, "--block-size"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Initialization seed; defaults to the data seed"),
    out: Path = typer.Option(..., "--out", help="Directory for D.txt, X.txt and history.csv"),
) -> None:
    """Alternate OMP and dictionary updates from a random initial dictionary."""

    with _exit_codes():
        training = _load_training(data)
        d0 = training.ground_truth[0] if training.ground_truth is not None else None
        l = atoms or (d0.l if d0 is not None else training.m)  # noqa: E741
        sparsity = k or max(1, round_half_away(training.theta * l))
        cfg = LearnConfig(
            update=UpdateConfig(method=method, block_size=block_size),
            omp=OmpConfig(k=sparsity),
            n_atoms=l,
            n_iterations=iterations,
            seed=training.seed if seed is None else seed,
        )
        result = learn(training.samples, cfg, ground_truth=d0 if d0 is not None and d0.l == l else None)
        out.mkdir(parents=True, exist_ok=True)
        write_matrix(out / "D.txt", result.dictionary.atoms)
        write_matrix(out / "X.txt", result.coeffs.values)
        write_history_csv(out / "history.csv", result.history)
        typer.echo(f"{method.label}: best objective at iteration {result.best_iteration}, written to {out}")
        _report_recovery(training, result.dictionary)


@app.command("update")
def update_command(
    data: Path = typer.Option(..., "--data", help="Training set directory with ground truth"),
    method: UpdateMethod = typer.Option(UpdateMethod.BLOTLESS_ITERTLS, "--method"),
    dictionary: Optional[Path] = typer.Option(None, "--dictionary", help="Initial D; defaults to random"),
    r: float = typer.Option(0.0, "--r", help="Fraction of the true support to corrupt"),
    block_size: Optional[int] = typer.Option(None, "--block-size"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for corruption and random D; defaults to the data seed"),
    out: Path = typer.Option(..., "--out", help="Directory for D.txt and X.txt"),
) -> None:
    """One dictionary update on the (optionally corrupted) true support pattern."""

    with _exit_codes():
        training = _load_training(data)
        if training.ground_truth is None:
            raise ConfigError(f"{data} has no ground-truth pattern; `update` needs X0 and its support")
        d0, x0 = training.ground_truth
        run_seed = training.seed if seed is None else seed
        pattern = corrupt_pattern(x0.pattern, r, run_seed)
        x_init: SparseCoeffs = project_to_pattern(x0.values, pattern)
        d_init = Dictionary(read_matrix(dictionary)) if dictionary is not None else random_dictionary(d0.m, d0.l, run_seed)
        d_hat, x_hat = update_dictionary(training.samples, d_init, x_init, UpdateConfig(method=method, block_size=block_size))
        out.mkdir(parents=True, exist_ok=True)
        write_matrix(out / "D.txt", d_hat.atoms)
        write_matrix(out / "X.txt", x_hat.values)
        typer.echo(f"{method.label} update written to {out}")
        _report_recovery(training, d_hat)


def _run_experiment(
    kind: ExperimentKind,
    *,
    spec: Optional[Path],
    seed: Optional[int],
    out: Path,
    threads: Optional[int],
    full: bool,
    no_timing: bool,
    extra: Optional[dict] = None,
) -> None:
    with _exit_codes():
        overrides = {"base_seed": seed, "threads": threads, **(extra or {})}
        resolved = resolve_spec(kind, spec_file=spec, full=full, overrides=overrides)
        result = RUNNERS[kind](resolved)
        target = result.write_csv(out, include_timing=not no_timing)
        typer.echo(f"{kind.value}: {len(result.rows)} rows written to {target}")


SPEC_OPTION = typer.Option(None, "--spec", help="JSON experiment spec; defaults to the preset")
SEED_OPTION = typer.Option(None, "--seed", help="Override base_seed")
THREADS_OPTION = typer.Option(None, "--threads", help="Parallel trials")
FULL_OPTION = typer.Option(False, "--full", help="Use the full-scale preset")
NO_TIMING_OPTION = typer.Option(False, "--no-timing", help="Leave the seconds column empty")


def _out_option(default: str) -> Path:
    return typer.Option(Path(default), "--out", help="Result CSV path")


@app.command()
def phase(
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/phase_transition.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """Exact-recovery probability of BLOTLESS-LS against n."""

    _run_experiment(ExperimentKind.PHASE_TRANSITION, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing)


@app.command()
def curve(
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/learn_curve.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """Recovery error per learning iteration for each update method."""

    _run_experiment(ExperimentKind.LEARN_CURVE, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing)


@app.command()
def robust(
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/pattern_robustness.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """Single-update recovery error under support corruption."""

    _run_experiment(ExperimentKind.PATTERN_ROBUSTNESS, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing)


@app.command()
def blocks(
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/block_size_sweep.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """Learning curves per BLOTLESS block size, with K-SVD for reference."""

    _run_experiment(ExperimentKind.BLOCK_SIZE_SWEEP, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing)


@app.command()
def bench(
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/runtime_bench.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """Seconds per dictionary update for each method."""

    _run_experiment(ExperimentKind.RUNTIME_BENCH, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing)


@app.command("bounds-table")
def bounds_table_command(
    spec: Optional[Path] = SPEC_OPTION,
    out: Path = _out_option("results/bounds_table.csv"),
    full: bool = FULL_OPTION,
) -> None:
    """Bounds over the preset (m, theta) grid as a result CSV."""

    _run_experiment(ExperimentKind.BOUNDS_TABLE, spec=spec, seed=None, out=out, threads=None, full=full, no_timing=True)


@app.command()
def denoise(
    images: Optional[Path] = typer.Option(None, "--images", help="Directory of 8-bit binary PGM images"),
    sigmas: Optional[str] = typer.Option(None, "--sigmas", help="Noise levels, e.g. 10,20,30"),
    spec: Optional[Path] = SPEC_OPTION,
    seed: Optional[int] = SEED_OPTION,
    out: Path = _out_option("results/denoise.csv"),
    threads: Optional[int] = THREADS_OPTION,
    full: bool = FULL_OPTION,
    no_timing: bool = NO_TIMING_OPTION,
) -> None:
    """PSNR of noisy and denoised images for each learned dictionary."""

    with _exit_codes():
        extra: dict = {"images_dir": str(images) if images is not None else None}
        if sigmas is not None:
            extra["sigmas"] = _parse_list(sigmas, float, "sigmas")
    _run_experiment(
        ExperimentKind.DENOISE, spec=spec, seed=seed, out=out, threads=threads, full=full, no_timing=no_timing, extra=extra
    )


def run() -> None:
    app()


if __name__ == "__main__":
    run()


__all__ = ["app", "run"]
