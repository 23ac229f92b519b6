"""Bit-exact, language-neutral serialization.

Two wire formats, shared with any external harness:

* Representation bundles: a JSON object with exactly the fields
  ``kind`` ("matrix", "can", "choi", "chi", "ptm" or "kraus"),
  ``qubits``, ``data`` and ``convention``.  Complex entries are always
  two-element ``[re, im]`` arrays.  For "kraus" the data is a list of
  operators, each either a single matrix (meaning L = K) or a ``[K, L]``
  pair; for every other kind it is one matrix (2^n-dim for "matrix",
  4^n-dim otherwise).  The ``convention`` record pins the vectorization
  orientation and the Choi sign rule this library freezes; documents
  declaring anything else are rejected.  Serialization is deterministic
  (sorted keys, no whitespace), so identical bundles are byte-identical,
  and floats use Python's shortest round-trippable repr.

* Timing records: CSV with exactly the columns
  ``algorithm,n,instance_kind,seed,repetitions,mean_seconds,std_seconds``.

Parsers are strict: unknown fields, non-finite numbers, ragged rows and
dimension/qubits mismatches all raise :class:`BundleFormatError` naming
the offending field path.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .channels import CAN, CHI, CHOI, KRAUS, PTM, ChannelRep, coerce_kraus_pairs
from .pauli import ROW_MAJOR, DomainError, _as_square

MATRIX = "matrix"
BUNDLE_KINDS = (MATRIX, CAN, CHOI, CHI, PTM, KRAUS)

CHOI_SIGN_RULE = "y-parity"
CONVENTION = {"vector_orientation": ROW_MAJOR, "choi_sign_rule": CHOI_SIGN_RULE}


class BundleFormatError(ValueError):
    """A document violated the bundle or timing schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _bundle_dim(kind: str, qubits: int) -> int:
    return 2**qubits if kind in (MATRIX, KRAUS) else 4**qubits


@dataclass
class RepBundle:
    """An in-memory bundle: one matrix, or kraus operator pairs."""

    kind: str
    qubits: int
    data: np.ndarray | list[tuple[np.ndarray, np.ndarray]]
    convention: dict = field(default_factory=lambda: dict(CONVENTION))

    def __post_init__(self) -> None:
        if self.kind not in BUNDLE_KINDS:
            raise DomainError(f"unknown bundle kind {self.kind!r}")
        if self.qubits < 1:
            raise DomainError("bundle needs qubits >= 1")
        if self.convention != CONVENTION:
            raise DomainError(f"unsupported convention {self.convention!r}")
        dim = _bundle_dim(self.kind, self.qubits)
        if self.kind == KRAUS:
            self.data = [
                (np.asarray(K, dtype=np.complex128), np.asarray(L, dtype=np.complex128))
                for K, L in self.data
            ]
            if not self.data:
                raise DomainError("kraus bundle needs at least one operator")
            shapes = {M.shape for pair in self.data for M in pair}
            if shapes != {(dim, dim)}:
                raise DomainError(f"kraus operators must all be {dim}x{dim} for qubits={self.qubits}")
            finite = all(np.isfinite(M).all() for pair in self.data for M in pair)
        else:
            self.data = np.asarray(self.data, dtype=np.complex128)
            if self.data.shape != (dim, dim):
                raise DomainError(
                    f"{self.kind} data is {'x'.join(map(str, self.data.shape))}, "
                    f"expected {dim}x{dim} for qubits={self.qubits}"
                )
            finite = bool(np.isfinite(self.data).all())
        if not finite:
            raise DomainError("bundle entries must be finite")

    @property
    def matrix(self) -> np.ndarray:
        if self.kind == KRAUS:
            raise DomainError("a kraus bundle holds operator pairs, not one matrix")
        return self.data

    @property
    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        if self.kind != KRAUS:
            raise DomainError(f"a {self.kind} bundle holds one matrix, not operator pairs")
        return self.data

    def channel_rep(self) -> ChannelRep:
        """View this bundle as a channel representation (not for 'matrix')."""
        if self.kind == KRAUS:
            return ChannelRep(kind=KRAUS, qubits=self.qubits, pairs=self.pairs)
        if self.kind == MATRIX:
            raise DomainError("a plain operator matrix is not a channel representation")
        return ChannelRep(kind=self.kind, qubits=self.qubits, matrix=self.matrix)


def matrix_bundle(kind: str, M) -> RepBundle:
    """Bundle one matrix, inferring qubits from its dimension."""
    M = _as_square(M, "bundle matrix")
    bits = M.shape[0].bit_length() - 1
    qubits = bits if kind in (MATRIX, KRAUS) else bits // 2
    return RepBundle(kind=kind, qubits=qubits, data=M)


def kraus_bundle(operators) -> RepBundle:
    pairs = coerce_kraus_pairs(operators)
    qubits = pairs[0][0].shape[0].bit_length() - 1
    return RepBundle(kind=KRAUS, qubits=qubits, data=pairs)


def _encode_matrix(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _encode_data(bundle: RepBundle) -> list:
    if bundle.kind != KRAUS:
        return _encode_matrix(bundle.matrix)
    items = []
    for K, L in bundle.pairs:
        if np.array_equal(K, L):
            items.append(_encode_matrix(K))
        else:
            items.append([_encode_matrix(K), _encode_matrix(L)])
    return items


def write_bundle(bundle: RepBundle) -> str:
    """Serialize deterministically (byte-identical for equal bundles)."""
    doc = {
        "kind": bundle.kind,
        "qubits": bundle.qubits,
        "convention": dict(CONVENTION),
        "data": _encode_data(bundle),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _expect_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BundleFormatError(path, f"expected an integer, got {value!r}")
    return value


def _decode_entry(node, path: str) -> complex:
    if not isinstance(node, list) or len(node) != 2:
        raise BundleFormatError(path, "expected a [re, im] pair")
    parts = []
    for i, x in enumerate(node):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise BundleFormatError(f"{path}[{i}]", f"expected a number, got {x!r}")
        if not math.isfinite(x):
            raise BundleFormatError(f"{path}[{i}]", f"non-finite value {x!r}")
        parts.append(float(x))
    return complex(parts[0], parts[1])


def _decode_matrix(node, path: str, dim: int, qubits: int) -> np.ndarray:
    if not isinstance(node, list):
        raise BundleFormatError(path, "expected a matrix (list of rows)")
    if len(node) != dim:
        raise BundleFormatError(path, f"has {len(node)} rows, expected {dim} for qubits={qubits}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for r, row in enumerate(node):
        if not isinstance(row, list):
            raise BundleFormatError(f"{path}[{r}]", "expected a row (list of entries)")
        if len(row) != dim:
            raise BundleFormatError(
                f"{path}[{r}]", f"has {len(row)} entries, expected {dim} for qubits={qubits}"
            )
        for c, cell in enumerate(row):
            out[r, c] = _decode_entry(cell, f"{path}[{r}][{c}]")
    return out


def _is_pair_item(item) -> bool:
    # A [K, L] pair nests one level deeper than a bare matrix: probing
    # item[0][0][0] hits a [re, im] list for a pair, a number for a matrix.
    probe = item
    for _ in range(3):
        if not isinstance(probe, list) or not probe:
            return False
        probe = probe[0]
    return isinstance(probe, list)


def read_bundle(text: str) -> RepBundle:
    """Parse and validate a bundle document (strict schema)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFormatError("", f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise BundleFormatError("", "expected a JSON object")
    expected = {"kind", "qubits", "data", "convention"}
    for key in expected - doc.keys():
        raise BundleFormatError(key, "missing field")
    for key in doc.keys() - expected:
        raise BundleFormatError(key, "unknown field")

    kind = doc["kind"]
    if kind not in BUNDLE_KINDS:
        raise BundleFormatError("kind", f"unknown kind {kind!r}")
    qubits = _expect_int(doc["qubits"], "qubits")
    if qubits < 1:
        raise BundleFormatError("qubits", f"must be >= 1, got {qubits}")

    convention = doc["convention"]
    if not isinstance(convention, dict):
        raise BundleFormatError("convention", "expected an object")
    for key in CONVENTION.keys() - convention.keys():
        raise BundleFormatError(f"convention.{key}", "missing field")
    for key in convention.keys() - CONVENTION.keys():
        raise BundleFormatError(f"convention.{key}", "unknown field")
    for key, frozen in CONVENTION.items():
        if convention[key] != frozen:
            raise BundleFormatError(
                f"convention.{key}", f"unsupported value {convention[key]!r} (this library uses {frozen!r})"
            )

    dim = _bundle_dim(kind, qubits)
    if kind == KRAUS:
        node = doc["data"]
        if not isinstance(node, list) or not node:
            raise BundleFormatError("data", "expected a non-empty list of operators")
        pairs = []
        for i, item in enumerate(node):
            if _is_pair_item(item):
                if len(item) != 2:
                    raise BundleFormatError(f"data[{i}]", "an operator pair must have exactly 2 matrices")
                K = _decode_matrix(item[0], f"data[{i}][0]", dim, qubits)
                L = _decode_matrix(item[1], f"data[{i}][1]", dim, qubits)
            else:
                K = _decode_matrix(item, f"data[{i}]", dim, qubits)
                L = K
            pairs.append((K, L))
        return RepBundle(kind=kind, qubits=qubits, data=pairs)
    data = _decode_matrix(doc["data"], "data", dim, qubits)
    return RepBundle(kind=kind, qubits=qubits, data=data)


# --- timing records ---------------------------------------------------

TIMING_COLUMNS = ("algorithm", "n", "instance_kind", "seed", "repetitions", "mean_seconds", "std_seconds")


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
        if self.repetitions < 1:
            raise DomainError("timing record needs repetitions >= 1")
        if not self.mean_seconds > 0:
            raise DomainError("timing record needs mean_seconds > 0")
        if self.std_seconds < 0:
            raise DomainError("timing record needs std_seconds >= 0")

    @property
    def key(self) -> tuple:
        """Identity for idempotent CSV appends."""
        return (self.algorithm, self.n, self.seed, self.instance_kind, self.repetitions)


def write_timings(records) -> str:
    """CSV text: one header row plus one row per record."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TIMING_COLUMNS)
    for rec in records:
        writer.writerow(
            [rec.algorithm, int(rec.n), rec.instance_kind, int(rec.seed), int(rec.repetitions),
             repr(float(rec.mean_seconds)), repr(float(rec.std_seconds))]
        )
    return buf.getvalue()


def read_timings(text: str) -> list[TimingRecord]:
    """Parse CSV produced by :func:`write_timings` (strict header)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise BundleFormatError("", "timing CSV is empty (expected a header row)") from None
    if tuple(header) != TIMING_COLUMNS:
        raise BundleFormatError("", f"unexpected header {header!r}")
    records = []
    for i, row in enumerate(reader):
        if not row:
            continue
        if len(row) != len(TIMING_COLUMNS):
            raise BundleFormatError(f"row {i + 1}", f"has {len(row)} columns, expected {len(TIMING_COLUMNS)}")
        try:
            records.append(
                TimingRecord(
                    algorithm=row[0],
                    n=int(row[1]),
                    instance_kind=row[2],
                    seed=int(row[3]),
                    repetitions=int(row[4]),
                    mean_seconds=float(row[5]),
                    std_seconds=float(row[6]),
                )
            )
        except (ValueError, DomainError) as exc:
            if isinstance(exc, BundleFormatError):
                raise
            raise BundleFormatError(f"row {i + 1}", str(exc)) from None
    return records
