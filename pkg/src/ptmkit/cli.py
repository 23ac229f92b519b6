"""Command-line front end.

Subcommands: ``convert`` (representation bundle -> ptm bundle),
``tables`` (dump the elementary tables as bundles), ``verify`` (oracle
equivalence suite with per-check deviations), ``bench`` (seeded timing
runs -> CSV) and ``gen`` (write a seeded instance bundle).

Exit codes: 0 success, 1 validation failure, 2 usage error.

This module imports the numeric stack lazily inside each subcommand so
that a ``--threads`` setting can reach the BLAS runtime through the
environment before it loads.  Thread count is otherwise whatever the
user's environment sets; timing records do not annotate it.
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

VERIFY_TOLERANCE = 1e-10


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Cap BLAS/OpenMP threads (must precede the subcommand).")
def main(threads: int | None) -> None:
    """Construct Pauli transfer matrices from operators and channel
    representations; verify against the brute-force oracle; benchmark."""
    if threads is not None:
        for var in _THREAD_ENV_VARS:
            os.environ[var] = str(threads)


def _fail(exc: Exception) -> "click.ClickException":
    return click.ClickException(str(exc))


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
def cmd_convert(from_kind: str, to_kind: str, input_path: Path, output_path: Path) -> None:
    """Convert a channel-representation bundle to a transfer-matrix bundle."""
    from . import bundles, channels
    from .pauli import DomainError

    try:
        text = input_path.read_text()
    except OSError as exc:
        raise _fail(exc) from None
    try:
        bundle = bundles.read_bundle(text)
        if bundle.kind != from_kind:
            raise bundles.BundleFormatError(
                "kind", f"bundle holds {bundle.kind!r} but --from is {from_kind!r}"
            )
        ptm = channels.to_ptm(bundle.channel_rep())
        out = bundles.RepBundle(kind="ptm", qubits=bundle.qubits, data=ptm)
        output_path.write_text(bundles.write_bundle(out))
    except (DomainError, bundles.BundleFormatError, OSError) as exc:
        raise _fail(exc) from None
    click.echo(f"wrote {to_kind} bundle for {bundle.qubits} qubit(s) to {output_path}")


@main.command("tables")
@click.option("--which", required=True,
              type=click.Choice(["left", "right", "comm", "acomm", "sandwich"]))
def cmd_tables(which: str) -> None:
    """Print an elementary table as ptm bundles, one per line.

    Entries are ordered by Pauli rank (for sandwich: row-major over the
    (left, right) rank pair)."""
    from . import bundles
    from .elementary import tables

    table = getattr(tables(), which)
    if which == "sandwich":
        mats = [table[t, u] for t in range(4) for u in range(4)]
    else:
        mats = [table[t] for t in range(4)]
    for M in mats:
        click.echo(bundles.write_bundle(bundles.RepBundle(kind="ptm", qubits=1, data=M)), nl=False)


def run_verify_checks(qubits: int, seed: int, inject_table_fault: bool = False):
    """The oracle-equivalence suite behind ``verify``.

    Returns (name, max_abs_deviation) pairs: the regenerated elementary
    tables against the frozen constants, every constructor against
    ptm_direct on one seeded dense instance per size, and the two
    conversion round trips.  ``inject_table_fault`` flips the sign of
    one regenerated table entry so the table check must fail; it exists
    only to prove the suite can fail.
    """
    import dataclasses

    import numpy as np

    from . import bench, channels, elementary, oracle, superop

    def dev(X, Y) -> float:
        return float(np.abs(np.asarray(X) - np.asarray(Y)).max())

    checks: list[tuple[str, float]] = []

    generated = elementary.generate_tables()
    if inject_table_fault:
        left = generated.left.copy()
        left[3, 0, 3] = -left[3, 0, 3]
        generated = dataclasses.replace(generated, left=left)
    frozen = elementary.tables()
    checks.append((
        "tables-regeneration",
        max(dev(getattr(generated, f), getattr(frozen, f))
            for f in ("left", "right", "comm", "acomm", "sandwich")),
    ))

    def oracle_of(pairs):
        return oracle.ptm_direct(channels.kraus_rep(pairs))

    for n in range(1, qubits + 1):
        eye = np.eye(2**n, dtype=np.complex128)
        A = bench.gen_instance(bench.DENSE, n, seed)
        A1, A2 = bench.gen_operator_pair(bench.DENSE, n, seed)
        M = bench.gen_instance(bench.DENSE, 2 * n, seed)
        ops = bench.gen_kraus_set(bench.DENSE, n, seed, 4)

        checks.append((f"l-ptm/n={n}", dev(superop.l_ptm(A), oracle_of([(A, eye)]))))
        checks.append((f"r-ptm/n={n}", dev(superop.r_ptm(A), oracle_of([(eye, A.conj().T)]))))
        checks.append((f"m-ptm/n={n}", dev(superop.m_ptm(A1, A2), oracle_of([(A1, A2.conj().T)]))))
        checks.append((f"c-ptm/n={n}",
                       dev(superop.c_ptm(A), oracle_of([(A, eye), (eye, -A.conj().T)]))))
        checks.append((f"ac-ptm/n={n}",
                       dev(superop.ac_ptm(A), oracle_of([(A, eye), (eye, A.conj().T)]))))
        checks.append((f"can-ptm/n={n}",
                       dev(channels.can_to_ptm(M), oracle.ptm_direct(channels.can_rep(M)))))
        checks.append((f"choi-ptm/n={n}",
                       dev(channels.choi_to_ptm(M), oracle.ptm_direct(channels.choi_rep(M)))))
        checks.append((f"chi-ptm/n={n}",
                       dev(channels.chi_to_ptm(M), oracle.ptm_direct(channels.chi_rep(M)))))
        checks.append((f"kraus-ptm/n={n}",
                       dev(channels.kraus_to_ptm(ops), oracle.ptm_direct(channels.kraus_rep(ops)))))
        checks.append((f"can-roundtrip/n={n}", dev(channels.ptm_to_can(channels.can_to_ptm(M)), M)))
        checks.append((f"choi-chi-roundtrip/n={n}", dev(channels.chi_to_choi(channels.choi_to_chi(M)), M)))
    return checks


@main.command("verify")
@click.option("--qubits", type=click.IntRange(1, 3), default=2, show_default=True,
              help="Largest size to check (oracle cost grows like 64^n).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--inject-table-fault", is_flag=True, hidden=True)
def cmd_verify(qubits: int, seed: int, inject_table_fault: bool) -> None:
    """Check the fast constructors against the brute-force oracle."""
    checks = run_verify_checks(qubits, seed, inject_table_fault)
    failed = []
    for name, deviation in checks:
        status = "ok" if deviation <= VERIFY_TOLERANCE else "FAIL"
        click.echo(f"{name}: max-abs deviation {deviation:.3e} [{status}]")
        if deviation > VERIFY_TOLERANCE:
            failed.append(name)
    if failed:
        raise click.ClickException(f"checks failed: {', '.join(failed)}")
    click.echo(f"all {len(checks)} checks within {VERIFY_TOLERANCE:.0e}")


def _parse_qubit_range(text: str) -> tuple[int, int]:
    parts = text.split("..") if ".." in text else [text, text]
    try:
        lo, hi = (int(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"--qubits expects N or LO..HI, got {text!r}") from None
    return lo, hi


@main.command("bench")
@click.option("--algorithms", default="all", show_default=True,
              help="Comma-separated algorithm names, or 'all'.")
@click.option("--qubits", default="1..4", show_default=True, help="N or LO..HI.")
@click.option("--kind", type=click.Choice(["dense", "diagonal"]), default="dense",
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--repetitions", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--kraus-count", type=click.IntRange(min=1), default=None,
              help="Operators per kraus-ptm instance (default: n).")
@click.option("--warmup", type=click.IntRange(min=0), default=0, show_default=True,
              help="Untimed runs before the timed repetitions.")
@click.option("--memory-budget-gib", type=float, default=4.0, show_default=True,
              help="Refuse sizes whose output exceeds this budget.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="Merge records into this CSV (idempotent per key).")
def cmd_bench(algorithms: str, qubits: str, kind: str, seed: int, repetitions: int,
              kraus_count: int | None, warmup: int, memory_budget_gib: float,
              csv_path: Path | None) -> None:
    """Time the constructors on seeded random instances."""
    from . import bench, bundles
    from .pauli import DomainError

    names = bench.ALGORITHMS if algorithms == "all" else tuple(
        a.strip() for a in algorithms.split(",") if a.strip()
    )
    try:
        config = bench.BenchConfig(
            algorithms=names,
            qubits=_parse_qubit_range(qubits),
            instance_kind=kind,
            seed=seed,
            repetitions=repetitions,
            kraus_count=kraus_count,
            warmup=warmup,
            memory_budget_bytes=int(memory_budget_gib * bench.GIB),
        )
        records = bench.run_bench(config)
    except DomainError as exc:
        raise _fail(exc) from None

    if csv_path is None:
        click.echo(bundles.write_timings(records), nl=False)
        return
    existing = bundles.read_timings(csv_path.read_text()) if csv_path.exists() else []
    merged = bench.upsert_records(existing, records)
    csv_path.write_text(bundles.write_timings(merged))
    click.echo(f"wrote {len(merged)} record(s) to {csv_path}")


@main.command("gen")
@click.option("--kind", type=click.Choice(["dense", "diagonal"]), default="dense",
              show_default=True)
@click.option("--qubits", type=click.IntRange(1, 10), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", "output_path", required=True,
              type=click.Path(dir_okay=False, writable=True, path_type=Path))
def cmd_gen(kind: str, qubits: int, seed: int, output_path: Path) -> None:
    """Write a seeded random operator instance as a 'matrix' bundle."""
    from . import bench, bundles

    M = bench.gen_instance(kind, qubits, seed)
    bundle = bundles.RepBundle(kind="matrix", qubits=qubits, data=M)
    try:
        output_path.write_text(bundles.write_bundle(bundle))
    except OSError as exc:
        raise _fail(exc) from None
    click.echo(f"wrote {kind} instance (qubits={qubits}, seed={seed}) to {output_path}")


if __name__ == "__main__":
    main()
