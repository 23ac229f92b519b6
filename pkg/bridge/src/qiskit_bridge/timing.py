"""Timing suite for the framework's conversions to PTM.

Instance recipes, configuration shape, record identity and CSV columns
all mirror the reference implementation's benchmark harness so the two
CSVs concatenate into one table; rows from this side carry a ``ref-``
prefix on the algorithm name.  Only the framework's own conversion call
sits inside the timed region -- instance generation, wrapping into the
framework's channel object and the convention mapping of the output are
all untimed harness overhead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .conventions import BridgeError, _quantum_info
from .wire import TimingRecord

DENSE, DIAGONAL = "dense", "diagonal"
INSTANCE_KINDS = (DENSE, DIAGONAL)

REF_ALGORITHMS = ("ref-can-ptm", "ref-choi-ptm", "ref-chi-ptm", "ref-kraus-ptm")

GIB = 1024**3
DEFAULT_MEMORY_BUDGET_BYTES = 4 * GIB


def _draw(rng: np.random.Generator, kind: str, dim: int) -> np.ndarray:
    if kind == DENSE:
        return rng.uniform(-1.0, 1.0, (dim, dim)) + 1j * rng.uniform(-1.0, 1.0, (dim, dim))
    out = np.zeros((dim, dim), dtype=np.complex128)
    np.fill_diagonal(out, rng.uniform(-1.0, 1.0, dim) + 1j * rng.uniform(-1.0, 1.0, dim))
    return out


def gen_instance(kind: str, n: int, seed: int) -> np.ndarray:
    """The seeded 2^n x 2^n random matrix both harnesses agree on."""
    if kind not in INSTANCE_KINDS:
        raise BridgeError(f"unknown instance kind {kind!r}")
    if n < 1:
        raise BridgeError("instance generation needs n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return _draw(rng, kind, 2**n)


def gen_kraus_set(kind: str, n: int, seed: int, m: int) -> list[np.ndarray]:
    """m operators from one stream (the first matches gen_instance)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [_draw(rng, kind, 2**n) for _ in range(m)]


def output_bytes(n: int) -> int:
    # a dense complex128 4^n x 4^n transfer matrix
    return 16**n * 16


def check_memory_budget(n: int, budget_bytes: int) -> None:
    need = output_bytes(n)
    if need > budget_bytes:
        raise BridgeError(
            f"a {n}-qubit transfer matrix needs {need} bytes, exceeding the {budget_bytes}-byte budget"
        )


@dataclass
class BridgeBenchConfig:
    """Same shape as the reference implementation's bench configuration."""

    algorithms: tuple = REF_ALGORITHMS
    qubits: tuple = (1, 4)
    instance_kind: str = DENSE
    seed: int = 0
    repetitions: int = 3
    kraus_count: int | None = None
    warmup: int = 0
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES

    def __post_init__(self) -> None:
        unknown = [a for a in self.algorithms if a not in REF_ALGORITHMS]
        if unknown:
            raise BridgeError(f"unknown algorithm(s) {unknown} (choose from {', '.join(REF_ALGORITHMS)})")
        lo, hi = self.qubits
        if not (1 <= lo <= hi):
            raise BridgeError(f"bad qubit range {self.qubits}")
        if self.instance_kind not in INSTANCE_KINDS:
            raise BridgeError(f"unknown instance kind {self.instance_kind!r}")
        if self.repetitions < 1:
            raise BridgeError("repetitions must be >= 1")
        if self.warmup < 0:
            raise BridgeError("warmup must be >= 0")
        if self.kraus_count is not None and self.kraus_count < 1:
            raise BridgeError("kraus_count must be >= 1")

    def qubit_values(self):
        lo, hi = self.qubits
        return range(lo, hi + 1)


def _prepare(algorithm: str, kind: str, n: int, seed: int, m: int):
    """Build the framework's input object (untimed); return the timed call."""
    qi = _quantum_info()
    if algorithm == "ref-can-ptm":
        obj = qi.SuperOp(gen_instance(kind, 2 * n, seed))
    elif algorithm == "ref-choi-ptm":
        obj = qi.Choi(gen_instance(kind, 2 * n, seed))
    elif algorithm == "ref-chi-ptm":
        obj = qi.Chi(gen_instance(kind, 2 * n, seed))
    elif algorithm == "ref-kraus-ptm":
        obj = qi.Kraus(gen_kraus_set(kind, n, seed, m))
    else:
        raise BridgeError(f"unknown algorithm {algorithm!r}")
    return lambda: qi.PTM(obj)


def time_algorithm(algorithm: str, n: int, config: BridgeBenchConfig) -> TimingRecord:
    check_memory_budget(n, config.memory_budget_bytes)
    m = config.kraus_count if config.kraus_count is not None else n
    try:
        run = _prepare(algorithm, config.instance_kind, n, config.seed, m)
        for _ in range(config.warmup):
            run()
        samples = np.empty(config.repetitions)
        for i in range(config.repetitions):
            start = time.perf_counter()
            run()
            samples[i] = time.perf_counter() - start
    except BridgeError:
        raise
    except Exception as exc:
        raise BridgeError(f"the framework rejected the {algorithm} instance at n={n}: {exc}") from exc
    return TimingRecord(
        algorithm=algorithm,
        n=n,
        instance_kind=config.instance_kind,
        seed=config.seed,
        repetitions=config.repetitions,
        mean_seconds=float(samples.mean()),
        std_seconds=float(samples.std()),
    )


def run_timing_suite(config: BridgeBenchConfig) -> list[TimingRecord]:
    """All (algorithm, n) cells of the configuration, in order."""
    return [
        time_algorithm(algorithm, n, config)
        for algorithm in config.algorithms
        for n in config.qubit_values()
    ]
