"""Reader/writer for the shared wire formats.

The harness exchanges data with the reference implementation purely
through two file formats, and this module is the only place they are
spelled out:

* representation bundles: one JSON object with exactly the keys
  ``kind`` / ``qubits`` / ``data`` / ``convention``; complex entries are
  ``[re, im]`` pairs; ``kraus`` data is a list of operators where an
  entry is either a bare matrix (L = K) or a two-matrix ``[K, L]`` pair;
  writing is deterministic (sorted keys, no spaces, trailing newline) so
  equal bundles serialize to identical bytes,

* timing CSV with the columns
  ``algorithm,n,instance_kind,seed,repetitions,mean_seconds,std_seconds``
  and floats written with ``repr`` so they round-trip exactly.

Nothing here imports the package on the other side of the boundary; the
formats themselves are the contract.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

MATRIX, CAN, CHOI, CHI, PTM, KRAUS = "matrix", "can", "choi", "chi", "ptm", "kraus"
KINDS = (MATRIX, CAN, CHOI, CHI, PTM, KRAUS)
CHANNEL_KINDS = (CAN, CHOI, CHI, KRAUS)

# The convention record every bundle must carry, verbatim.
CONVENTION = {"vector_orientation": "row-major", "choi_sign_rule": "y-parity"}

TIMING_COLUMNS = ("algorithm", "n", "instance_kind", "seed", "repetitions", "mean_seconds", "std_seconds")


class WireError(ValueError):
    """A document does not follow the wire format."""


def _dim(kind: str, qubits: int) -> int:
    return 2**qubits if kind in (MATRIX, KRAUS) else 4**qubits


@dataclass
class Bundle:
    kind: str
    qubits: int
    data: object  # ndarray, or list of (K, L) pairs for kraus
    convention: dict = field(default_factory=lambda: dict(CONVENTION))

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise WireError(f"unknown bundle kind {self.kind!r}")
        if not isinstance(self.qubits, int) or self.qubits < 1:
            raise WireError(f"qubits must be a positive integer, got {self.qubits!r}")
        if self.convention != CONVENTION:
            raise WireError(f"unsupported convention record {self.convention!r}")
        d = _dim(self.kind, self.qubits)
        if self.kind == KRAUS:
            pairs = [(np.asarray(K, dtype=complex), np.asarray(L, dtype=complex)) for K, L in self.data]
            if not pairs:
                raise WireError("kraus bundle needs at least one operator")
            if any(M.shape != (d, d) for pair in pairs for M in pair):
                raise WireError(f"kraus operators must all be {d}x{d} for qubits={self.qubits}")
            if not all(np.isfinite(M).all() for pair in pairs for M in pair):
                raise WireError("bundle entries must be finite")
            self.data = pairs
        else:
            M = np.asarray(self.data, dtype=complex)
            if M.shape != (d, d):
                raise WireError(f"{self.kind} data must be {d}x{d} for qubits={self.qubits}, got {M.shape}")
            if not np.isfinite(M).all():
                raise WireError("bundle entries must be finite")
            self.data = M

    @property
    def matrix(self) -> np.ndarray:
        if self.kind == KRAUS:
            raise WireError("a kraus bundle holds operator pairs, not one matrix")
        return self.data

    @property
    def pairs(self) -> list:
        if self.kind != KRAUS:
            raise WireError(f"a {self.kind} bundle holds one matrix, not operator pairs")
        return self.data


def matrix_bundle(kind: str, M) -> Bundle:
    """Wrap one matrix, inferring the qubit count from its dimension."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise WireError(f"expected a square matrix, got shape {M.shape}")
    bits = int(M.shape[0]).bit_length() - 1
    qubits = bits if kind in (MATRIX, KRAUS) else bits // 2
    return Bundle(kind=kind, qubits=qubits, data=M)


def kraus_bundle(pairs) -> Bundle:
    """Wrap kraus operators given as matrices or (K, L) pairs."""
    norm = []
    for item in pairs:
        if isinstance(item, (tuple, list)) and len(item) == 2 and np.ndim(item[0]) == 2:
            norm.append((item[0], item[1]))
        else:
            norm.append((item, item))
    if not norm:
        raise WireError("kraus bundle needs at least one operator")
    qubits = int(np.asarray(norm[0][0]).shape[0]).bit_length() - 1
    return Bundle(kind=KRAUS, qubits=qubits, data=norm)


def _emit_matrix(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def dumps(bundle: Bundle) -> str:
    """Serialize a bundle to its canonical byte-stable JSON form."""
    if bundle.kind == KRAUS:
        data = [
            _emit_matrix(K) if np.array_equal(K, L) else [_emit_matrix(K), _emit_matrix(L)]
            for K, L in bundle.pairs
        ]
    else:
        data = _emit_matrix(bundle.matrix)
    doc = {"kind": bundle.kind, "qubits": bundle.qubits, "convention": dict(CONVENTION), "data": data}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _parse_entry(node, where: str) -> complex:
    if not isinstance(node, list) or len(node) != 2:
        raise WireError(f"{where}: expected a [re, im] pair")
    for x in node:
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise WireError(f"{where}: expected a finite number, got {x!r}")
    return complex(node[0], node[1])


def _parse_matrix(node, where: str, d: int) -> np.ndarray:
    if not isinstance(node, list) or len(node) != d:
        raise WireError(f"{where}: expected {d} rows")
    out = np.zeros((d, d), dtype=complex)
    for r, row in enumerate(node):
        if not isinstance(row, list) or len(row) != d:
            raise WireError(f"{where}[{r}]: expected {d} entries")
        for c, cell in enumerate(row):
            out[r, c] = _parse_entry(cell, f"{where}[{r}][{c}]")
    return out


def _looks_like_pair(item) -> bool:
    # a [K, L] pair nests one list level deeper than a bare matrix
    probe = item
    for _ in range(3):
        if not isinstance(probe, list) or not probe:
            return False
        probe = probe[0]
    return isinstance(probe, list)


def loads(text: str) -> Bundle:
    """Parse a bundle document; strict about the schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise WireError("expected a JSON object")
    want = {"kind", "qubits", "data", "convention"}
    if doc.keys() != want:
        missing, extra = want - doc.keys(), doc.keys() - want
        raise WireError(
            "bad bundle keys"
            + (f", missing {sorted(missing)}" if missing else "")
            + (f", unknown {sorted(extra)}" if extra else "")
        )
    kind = doc["kind"]
    if kind not in KINDS:
        raise WireError(f"unknown bundle kind {kind!r}")
    qubits = doc["qubits"]
    if isinstance(qubits, bool) or not isinstance(qubits, int) or qubits < 1:
        raise WireError(f"qubits must be a positive integer, got {qubits!r}")
    if doc["convention"] != CONVENTION:
        raise WireError(f"unsupported convention record {doc['convention']!r} (expected {CONVENTION!r})")
    d = _dim(kind, qubits)
    if kind == KRAUS:
        node = doc["data"]
        if not isinstance(node, list) or not node:
            raise WireError("data: expected a non-empty list of operators")
        pairs = []
        for i, item in enumerate(node):
            if _looks_like_pair(item):
                if len(item) != 2:
                    raise WireError(f"data[{i}]: an operator pair must hold exactly 2 matrices")
                pairs.append((_parse_matrix(item[0], f"data[{i}][0]", d), _parse_matrix(item[1], f"data[{i}][1]", d)))
            else:
                K = _parse_matrix(item, f"data[{i}]", d)
                pairs.append((K, K))
        return Bundle(kind=kind, qubits=qubits, data=pairs)
    return Bundle(kind=kind, qubits=qubits, data=_parse_matrix(doc["data"], "data", d))


# --- timing CSV --------------------------------------------------------


@dataclass(frozen=True)
class TimingRecord:
    algorithm: str
    n: int
    instance_kind: str
    seed: int
    repetitions: int
    mean_seconds: float
    std_seconds: float

    def __post_init__(self) -> None:
        if self.repetitions < 1 or not self.mean_seconds > 0 or self.std_seconds < 0:
            raise WireError("timing record needs repetitions >= 1, mean > 0 and std >= 0")

    @property
    def key(self) -> tuple:
        return (self.algorithm, self.n, self.seed, self.instance_kind, self.repetitions)


def dump_timings(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TIMING_COLUMNS)
    for r in records:
        w.writerow(
            [r.algorithm, int(r.n), r.instance_kind, int(r.seed), int(r.repetitions),
             repr(float(r.mean_seconds)), repr(float(r.std_seconds))]
        )
    return buf.getvalue()


def load_timings(text: str) -> list[TimingRecord]:
    rows = csv.reader(io.StringIO(text))
    try:
        header = next(rows)
    except StopIteration:
        raise WireError("timing CSV is empty") from None
    if tuple(header) != TIMING_COLUMNS:
        raise WireError(f"unexpected timing CSV header {header!r}")
    out = []
    for i, row in enumerate(rows):
        if not row:
            continue
        if len(row) != len(TIMING_COLUMNS):
            raise WireError(f"row {i + 1}: has {len(row)} columns, expected {len(TIMING_COLUMNS)}")
        try:
            out.append(
                TimingRecord(row[0], int(row[1]), row[2], int(row[3]), int(row[4]), float(row[5]), float(row[6]))
            )
        except ValueError as exc:
            raise WireError(f"row {i + 1}: {exc}") from None
    return out


def merge_timings(existing, new) -> list[TimingRecord]:
    """Upsert on the record key, preserving first-seen order."""
    merged = list(existing)
    where = {r.key: i for i, r in enumerate(merged)}
    for r in new:
        if r.key in where:
            merged[where[r.key]] = r
        else:
            where[r.key] = len(merged)
            merged.append(r)
    return merged
