"""Command-line front end for the bridge.

Subcommands: ``discover`` (measure the framework's conventions and save
the map), ``convert`` (channel bundle -> ptm bundle via the framework)
and ``bench`` (time the framework's conversions, ``ref-`` prefixed, into
the shared timing CSV).

Exit codes: 0 success, 1 validation or framework failure, 2 usage error.
The numeric stack is imported lazily inside each subcommand so that a
``--threads`` setting can reach the BLAS runtime through the environment
before it loads.
"""

from __future__ import annotations

import os
from pathlib import Path

import click

_THREAD_ENV_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Cap BLAS/OpenMP threads (must precede the subcommand).")
def main(threads: int | None) -> None:
    """Cross-validate and time the reference framework's channel-to-PTM
    conversions against the shared wire formats."""
    if threads is not None:
        for var in _THREAD_ENV_VARS:
            os.environ[var] = str(threads)


def _fail(exc: Exception) -> "click.ClickException":
    return click.ClickException(str(exc))


def _load_map(path: Path | None):
    """Read a saved convention map, or discover one now."""
    from .conventions import BridgeError, discover_convention_map, loads_map

    try:
        if path is not None:
            return loads_map(path.read_text()), None
        return discover_convention_map()
    except (OSError, BridgeError) as exc:
        raise _fail(exc) from exc


@main.command("discover")
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False, writable=True, path_type=Path))
def cmd_discover(output_path: Path) -> None:
    """Probe the framework's conventions and write the map as JSON."""
    from .conventions import BridgeError, discover_convention_map

    try:
        cmap, report = discover_convention_map()
    except BridgeError as exc:
        raise _fail(exc) from exc
    output_path.write_text(cmap.dumps(probe_residuals=report))
    for name, resid in report.items():
        click.echo(f"{name}: residual {resid:.3e}")
    click.echo(f"wrote convention map to {output_path}")


@main.command("convert")
@click.option("--from", "from_kind", required=True,
              type=click.Choice(["can", "choi", "chi", "kraus"]),
              help="Representation kind of the input bundle.")
@click.option("--to", "to_kind", default="ptm", show_default=True,
              type=click.Choice(["ptm"]))
@click.option("--input", "input_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False, writable=True, path_type=Path))
@click.option("--conventions", "map_path", default=None,
              type=click.Path(dir_okay=False, path_type=Path),
              help="Reuse a saved convention map instead of probing.")
def cmd_convert(from_kind: str, to_kind: str, input_path: Path,
                output_path: Path, map_path: Path | None) -> None:
    """Convert a channel bundle to a ptm bundle via the framework."""
    from . import wire
    from .conventions import BridgeError
    from .reference import run_reference_conversion

    try:
        text = input_path.read_text()
    except OSError as exc:
        raise _fail(exc) from exc
    try:
        bundle = wire.loads(text)
    except wire.WireError as exc:
        raise _fail(exc) from exc
    if bundle.kind != from_kind:
        raise _fail(ValueError(f"bundle holds {bundle.kind!r} but --from is {from_kind!r}"))
    cmap, report = _load_map(map_path)
    try:
        out = run_reference_conversion(bundle, cmap, target=to_kind)
    except (wire.WireError, BridgeError) as exc:
        raise _fail(exc) from exc
    output_path.write_text(wire.dumps(out))
    if report is not None:
        side = output_path.with_name(output_path.name + ".conventions.json")
        side.write_text(cmap.dumps(probe_residuals=report))
        click.echo(f"wrote discovered convention map to {side}")
    click.echo(f"wrote {to_kind} bundle for {bundle.qubits} qubit(s) to {output_path}")


def _parse_qubit_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.UsageError(f"--qubits expects N or LO..HI, got {text!r}") from None
    if not (1 <= lo <= hi):
        raise click.UsageError(f"--qubits expects 1 <= LO <= HI, got {text!r}")
    return lo, hi


@main.command("bench")
@click.option("--algorithms", default="all", show_default=True,
              help="Comma-separated ref-* algorithm names, or 'all'.")
@click.option("--qubits", default="1..4", show_default=True, help="N or LO..HI.")
@click.option("--kind", default="dense", show_default=True,
              type=click.Choice(["dense", "diagonal"]))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--repetitions", default=3, show_default=True, type=click.IntRange(min=1))
@click.option("--kraus-count", default=None, type=click.IntRange(min=1),
              help="Operators per ref-kraus-ptm instance (default: n).")
@click.option("--warmup", default=0, show_default=True, type=click.IntRange(min=0),
              help="Untimed runs before the timed repetitions.")
@click.option("--memory-budget-gib", default=4.0, show_default=True, type=float,
              help="Refuse sizes whose output exceeds this budget.")
@click.option("--csv", "csv_path", default=None,
              type=click.Path(dir_okay=False, writable=True, path_type=Path),
              help="Merge records into this CSV (idempotent per key).")
def cmd_bench(algorithms: str, qubits: str, kind: str, seed: int, repetitions: int,
              kraus_count: int | None, warmup: int, memory_budget_gib: float,
              csv_path: Path | None) -> None:
    """Time the framework's conversions on seeded random instances."""
    from . import wire
    from .conventions import BridgeError
    from .timing import GIB, REF_ALGORITHMS, BridgeBenchConfig, run_timing_suite

    names = REF_ALGORITHMS if algorithms == "all" else tuple(a.strip() for a in algorithms.split(","))
    try:
        config = BridgeBenchConfig(
            algorithms=names,
            qubits=_parse_qubit_range(qubits),
            instance_kind=kind,
            seed=seed,
            repetitions=repetitions,
            kraus_count=kraus_count,
            warmup=warmup,
            memory_budget_bytes=int(memory_budget_gib * GIB),
        )
        records = run_timing_suite(config)
    except BridgeError as exc:
        raise _fail(exc) from exc
    if csv_path is None:
        click.echo(wire.dump_timings(records), nl=False)
        return
    existing = []
    if csv_path.exists():
        try:
            existing = wire.load_timings(csv_path.read_text())
        except wire.WireError as exc:
            raise _fail(exc) from exc
    merged = wire.merge_timings(existing, records)
    csv_path.write_text(wire.dump_timings(merged))
    click.echo(f"wrote {len(merged)} record(s) to {csv_path}")


if __name__ == "__main__":
    main()
