"""Seeded instance generation and wall-clock timing of the constructors.

Instances follow a fixed, documented recipe: a PCG64 generator seeded
explicitly, entries with real and imaginary parts i.i.d. uniform in
[-1, 1] (the inputs are arbitrary matrices, not necessarily channels).
"dense" fills the whole matrix, "diagonal" only the diagonal.  Operator
algorithms get 2^n-dimensional operators; representation conversions
get the 4^n-dimensional representation matrix itself; "kraus-ptm" gets
m plain operators (default m = n).  Multi-operator instances draw from
one generator stream, so the first operator equals the single-operator
instance for the same seed.

Timing uses the monotonic high-resolution clock around the construction
call only -- instance generation and I/O are excluded -- and reports
mean and population standard deviation over the repetitions.  There is
no warm-up discard unless configured.

Output sizes are memory-checked before running: a transfer matrix holds
16^n complex doubles (exactly 4 GiB at n = 7), and sizes whose output
strictly exceeds the configured budget are refused.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .bundles import TimingRecord
from .channels import can_to_ptm, chi_to_ptm, choi_to_ptm, kraus_to_ptm
from .pauli import DomainError
from .superop import ac_ptm, c_ptm, l_ptm, m_ptm, r_ptm

DENSE = "dense"
DIAGONAL = "diagonal"
INSTANCE_KINDS = (DENSE, DIAGONAL)

ALGORITHMS = (
    "l-ptm", "r-ptm", "m-ptm", "c-ptm", "ac-ptm",
    "can-ptm", "choi-ptm", "chi-ptm", "kraus-ptm",
)

GIB = 2**30
DEFAULT_MEMORY_BUDGET_BYTES = 4 * GIB


class MemoryBudgetError(DomainError):
    """The requested size would allocate more output than the budget."""


@dataclass
class BenchConfig:
    algorithms: tuple[str, ...] = ALGORITHMS
    qubits: tuple[int, int] = (1, 4)
    instance_kind: str = DENSE
    seed: int = 0
    repetitions: int = 3
    kraus_count: int | None = None  # None means m = n
    warmup: int = 0
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES

    def __post_init__(self) -> None:
        self.algorithms = tuple(self.algorithms)
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise DomainError(f"unknown algorithm(s) {unknown} (choose from {', '.join(ALGORITHMS)})")
        if not self.algorithms:
            raise DomainError("no algorithms selected")
        lo, hi = self.qubits
        if not (1 <= lo <= hi <= 10):
            raise DomainError(f"qubit range {lo}..{hi} must lie within 1..10")
        if self.instance_kind not in INSTANCE_KINDS:
            raise DomainError(f"unknown instance kind {self.instance_kind!r}")
        if self.repetitions < 1:
            raise DomainError("repetitions must be >= 1")
        if self.kraus_count is not None and self.kraus_count < 1:
            raise DomainError("kraus count must be >= 1")
        if self.warmup < 0:
            raise DomainError("warmup must be >= 0")
        if self.memory_budget_bytes < 1:
            raise DomainError("memory budget must be positive")

    def qubit_values(self) -> range:
        return range(self.qubits[0], self.qubits[1] + 1)


def _draw(rng: np.random.Generator, kind: str, dim: int) -> np.ndarray:
    if kind == DENSE:
        return rng.uniform(-1.0, 1.0, (dim, dim)) + 1j * rng.uniform(-1.0, 1.0, (dim, dim))
    out = np.zeros((dim, dim), dtype=np.complex128)
    np.fill_diagonal(out, rng.uniform(-1.0, 1.0, dim) + 1j * rng.uniform(-1.0, 1.0, dim))
    return out


def gen_instance(kind: str, n: int, seed: int) -> np.ndarray:
    """One seeded 2^n x 2^n random matrix of the given kind."""
    if kind not in INSTANCE_KINDS:
        raise DomainError(f"unknown instance kind {kind!r}")
    if n < 1:
        raise DomainError("instance generation needs n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return _draw(rng, kind, 2**n)


def gen_operator_pair(kind: str, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Two matrices from one stream (the first matches gen_instance)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return _draw(rng, kind, 2**n), _draw(rng, kind, 2**n)


def gen_kraus_set(kind: str, n: int, seed: int, m: int) -> list[np.ndarray]:
    """m plain operators from one stream (L_i = K_i on use)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [_draw(rng, kind, 2**n) for _ in range(m)]


def output_bytes(n: int) -> int:
    """Size of an n-qubit transfer matrix in complex doubles."""
    return (4**n) ** 2 * 16


def check_memory_budget(n: int, budget_bytes: int) -> None:
    need = output_bytes(n)
    if need > budget_bytes:
        raise MemoryBudgetError(
            f"a {n}-qubit transfer matrix needs {need / GIB:.2f} GiB, "
            f"exceeding the {budget_bytes / GIB:.2f} GiB budget"
        )


def _prepare(algorithm: str, kind: str, n: int, seed: int, m: int):
    """Build the instance (untimed) and return the timed call."""
    if algorithm in ("l-ptm", "r-ptm", "c-ptm", "ac-ptm"):
        fn = {"l-ptm": l_ptm, "r-ptm": r_ptm, "c-ptm": c_ptm, "ac-ptm": ac_ptm}[algorithm]
        A = gen_instance(kind, n, seed)
        return lambda: fn(A)
    if algorithm == "m-ptm":
        A1, A2 = gen_operator_pair(kind, n, seed)
        return lambda: m_ptm(A1, A2)
    if algorithm in ("can-ptm", "choi-ptm", "chi-ptm"):
        fn = {"can-ptm": can_to_ptm, "choi-ptm": choi_to_ptm, "chi-ptm": chi_to_ptm}[algorithm]
        M = gen_instance(kind, 2 * n, seed)
        return lambda: fn(M)
    if algorithm == "kraus-ptm":
        ops = gen_kraus_set(kind, n, seed, m)
        return lambda: kraus_to_ptm(ops)
    raise DomainError(f"unknown algorithm {algorithm!r}")


def time_algorithm(algorithm: str, n: int, config: BenchConfig) -> TimingRecord:
    """Time one (algorithm, n) cell of the configuration."""
    check_memory_budget(n, config.memory_budget_bytes)
    m = config.kraus_count if config.kraus_count is not None else n
    run = _prepare(algorithm, config.instance_kind, n, config.seed, m)
    for _ in range(config.warmup):
        run()
    samples = np.empty(config.repetitions)
    for i in range(config.repetitions):
        start = time.perf_counter()
        run()
        samples[i] = time.perf_counter() - start
    return TimingRecord(
        algorithm=algorithm,
        n=n,
        instance_kind=config.instance_kind,
        seed=config.seed,
        repetitions=config.repetitions,
        mean_seconds=float(samples.mean()),
        std_seconds=float(samples.std()),
    )


def run_bench(config: BenchConfig) -> list[TimingRecord]:
    """All (algorithm, n) cells of the configuration, in order."""
    return [
        time_algorithm(algorithm, n, config)
        for algorithm in config.algorithms
        for n in config.qubit_values()
    ]


def upsert_records(existing, new) -> list[TimingRecord]:
    """Merge timing records idempotently on their identity key: a new
    record replaces an existing one with the same key in place."""
    merged = list(existing)
    index = {rec.key: i for i, rec in enumerate(merged)}
    for rec in new:
        if rec.key in index:
            merged[index[rec.key]] = rec
        else:
            index[rec.key] = len(merged)
            merged.append(rec)
    return merged


def fit_log2_slope(points) -> float:
    """Least-squares slope of log2(seconds) against n.

    ``points`` is an iterable of (n, seconds) pairs, e.g. built from
    TimingRecord (n, mean_seconds) fields.
    """
    pts = sorted(points)
    if len(pts) < 2:
        raise DomainError("slope fit needs at least two points")
    ns = np.array([p[0] for p in pts], dtype=float)
    secs = np.array([p[1] for p in pts], dtype=float)
    if not (secs > 0).all():
        raise DomainError("slope fit needs positive timings")
    return float(np.polyfit(ns, np.log2(secs), 1)[0])
