"""Pauli strings, orderings, and the recursive Pauli-basis change.

Conventions used throughout the package:

* Pauli matrices are indexed by quaternary digits 0..3 = I, X, Y, Z; an
  n-qubit Pauli string is the Kronecker product of its digits, ordered
  lexicographically (digit of the first tensor factor is most significant).
* The inner product is the normalized Frobenius form
  ``<A, B> = 2**(-n) * tr(A^dag B)``, which makes the Pauli strings an
  orthonormal basis (the canonical matrix units are orthogonal but carry
  norm 2**(-n/2) under it).
* Vectorization is row-major; a column-major orientation is available on
  the vectorized entry points for callers that need the transposed layout.

The basis change canonical -> Pauli ("tpd") works by recursive block
halving: a 2^n x 2^n matrix A with 2^(n-1)-sized blocks A11..A22 is split
into four cumulative matrix weights

    cmw_0 = (A11 + A22)/2      cmw_1 = (A12 + A21)/2
    cmw_2 = i(A12 - A21)/2     cmw_3 = (A11 - A22)/2

so that A = sum_t sigma_t (x) cmw_t, and each weight is recursed until
scalars remain.  Branches whose weight block is identically zero are
pruned, which is what makes structured (e.g. diagonal) inputs cheap and
keeps their output zeros exact.  All arithmetic is exact halving, so
Pauli-string inputs decompose without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

ROW_MAJOR = "row-major"
COLUMN_MAJOR = "column-major"
_NUMPY_ORDER = {ROW_MAJOR: "C", COLUMN_MAJOR: "F"}


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


DigitsLike = Union["QuaternaryString", Sequence[int], str]


def _coerce_digits(t: DigitsLike) -> tuple[int, ...]:
    if isinstance(t, QuaternaryString):
        return t.digits
    if isinstance(t, str):
        try:
            digits = tuple(int(ch) for ch in t)
        except ValueError:
            raise DomainError(f"not a quaternary string: {t!r}") from None
    else:
        digits = tuple(int(d) for d in t)
    for d in digits:
        if d not in (0, 1, 2, 3):
            raise DomainError(f"digit {d} outside {{0,1,2,3}}")
    return digits


@dataclass(frozen=True)
class QuaternaryString:
    """A length-n word over {0,1,2,3} naming one Pauli string."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", _coerce_digits(self.digits))

    @classmethod
    def from_rank(cls, rank: int, n: int) -> "QuaternaryString":
        return unrank(rank, n)

    @property
    def n(self) -> int:
        return len(self.digits)

    def rank(self) -> int:
        return lex_rank(self)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __str__(self) -> str:
        return "".join("IXYZ"[d] for d in self.digits)


@dataclass
class PauliWeights:
    """Pauli components of a matrix, indexed by lexicographic rank."""

    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=np.complex128)
        if self.weights.shape != (4**self.n,):
            raise DomainError(
                f"weight vector has shape {self.weights.shape}, expected ({4**self.n},)"
            )

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, idx):
        return self.weights[idx]


@dataclass
class CMWSet:
    """The four cumulative matrix weights of one decomposition level."""

    n: int
    cmw: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __iter__(self):
        return iter(self.cmw)

    def __getitem__(self, t: int) -> np.ndarray:
        return self.cmw[t]


_PAULI_1Q = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
_PAULI_1Q.setflags(write=False)

# One-factor kernels of every basis change in the package: _B1's columns
# are the row-major vectorizations of I, X, Y, Z, and its inverse is
# 2^-1 B^dag.  Both are dyadic, so folding them digit by digit performs
# exact arithmetic on exact inputs.
_B1 = np.stack([_PAULI_1Q[t].reshape(-1) for t in range(4)], axis=1)
_B1_INV = 0.5 * _B1.conj().T
_B1.setflags(write=False)
_B1_INV.setflags(write=False)


@lru_cache(maxsize=None)
def _pair_axes(n: int) -> tuple[int, ...]:
    # (r1..rn c1..cn) bit axes -> interleaved (r1 c1 r2 c2 ...) so each
    # adjacent bit pair forms one quaternary digit per tensor position
    return tuple(x for b in range(n) for x in (b, n + b))


@lru_cache(maxsize=None)
def _split_axes(n: int) -> tuple[int, ...]:
    # inverse of _pair_axes: digits back to (row bits..., col bits...)
    return tuple(range(0, 2 * n, 2)) + tuple(range(1, 2 * n, 2))


def pauli_matrix(t: int) -> np.ndarray:
    """Return the single-qubit Pauli matrix for digit ``t``."""
    if t not in (0, 1, 2, 3):
        raise DomainError(f"Pauli digit {t} outside {{0,1,2,3}}")
    return _PAULI_1Q[t].copy()


def pauli_string(t: DigitsLike) -> np.ndarray:
    """Return the Kronecker product of Pauli matrices named by ``t``."""
    digits = _coerce_digits(t)
    if not digits:
        raise DomainError("empty quaternary string has no Pauli matrix")
    out = _PAULI_1Q[digits[0]]
    for d in digits[1:]:
        out = np.kron(out, _PAULI_1Q[d])
    return np.array(out, dtype=np.complex128)


def lex_rank(t: DigitsLike) -> int:
    """0-based lexicographic rank of a quaternary string."""
    rank = 0
    for d in _coerce_digits(t):
        rank = rank * 4 + d
    return rank


def unrank(rank: int, n: int) -> QuaternaryString:
    """Inverse of :func:`lex_rank` for strings of length ``n``."""
    if n < 0 or not 0 <= rank < 4**n:
        raise DomainError(f"rank {rank} outside [0, 4**{n})")
    digits = []
    for _ in range(n):
        digits.append(rank % 4)
        rank //= 4
    return QuaternaryString(tuple(reversed(digits)))


def _qubit_count(dim: int, what: str = "matrix") -> int:
    n = max(dim.bit_length() - 1, 0)
    if dim <= 0 or 2**n != dim:
        raise DomainError(f"{what} dimension {dim} is not a power of two")
    return n


def _as_square(A, what: str = "matrix") -> np.ndarray:
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"{what} must be square, got shape {M.shape}")
    return M


def frobenius_inner(A, B) -> complex:
    """Normalized Frobenius inner product ``2**(-n) tr(A^dag B)``."""
    A = _as_square(A)
    B = _as_square(B)
    if A.shape != B.shape:
        raise DomainError(f"dimension mismatch {A.shape} vs {B.shape}")
    _qubit_count(A.shape[0])
    return complex(np.vdot(A, B) / A.shape[0])


def kron(A, B) -> np.ndarray:
    """Kronecker product (plumbing for tensor-factor checks)."""
    return np.kron(np.asarray(A, dtype=np.complex128), np.asarray(B, dtype=np.complex128))


def cmw_decompose(A) -> CMWSet:
    """Split a 2^n x 2^n matrix into its four half-size weight blocks."""
    M = _as_square(A)
    n = _qubit_count(M.shape[0])
    if n == 0:
        raise DomainError("cannot decompose a 1x1 matrix; scalar base case belongs to the caller")
    h = M.shape[0] // 2
    a11, a12 = M[:h, :h], M[:h, h:]
    a21, a22 = M[h:, :h], M[h:, h:]
    return CMWSet(
        n=n,
        cmw=(
            (a11 + a22) * 0.5,
            (a12 + a21) * 0.5,
            (a12 - a21) * 0.5j,
            (a11 - a22) * 0.5,
        ),
    )


def cmw_compose(c: CMWSet | Sequence[np.ndarray]) -> np.ndarray:
    """Rebuild ``sum_t sigma_t (x) cmw_t`` from four weight blocks."""
    blocks = tuple(np.asarray(b, dtype=np.complex128) for b in (c.cmw if isinstance(c, CMWSet) else c))
    if len(blocks) != 4:
        raise DomainError(f"expected 4 weight blocks, got {len(blocks)}")
    shape = blocks[0].shape
    if any(b.shape != shape for b in blocks) or shape[0] != shape[1]:
        raise DomainError("weight blocks must be square and equally sized")
    c0, c1, c2, c3 = blocks
    h = shape[0]
    out = np.empty((2 * h, 2 * h), dtype=np.complex128)
    out[:h, :h] = c0 + c3
    out[:h, h:] = c1 - 1j * c2
    out[h:, :h] = c1 + 1j * c2
    out[h:, h:] = c0 - c3
    return out


def _branch_pruned(block: np.ndarray, threshold: float) -> bool:
    if threshold:
        return bool(np.max(np.abs(block)) < threshold)
    return not block.any()


def _tpd_weights(M: np.ndarray, threshold: float) -> np.ndarray:
    if M.shape[0] == 1:
        return M.reshape(1).copy()
    h = M.shape[0] // 2
    a11, a12 = M[:h, :h], M[:h, h:]
    a21, a22 = M[h:, :h], M[h:, h:]
    quarter = h * h
    w = np.zeros(4 * quarter, dtype=np.complex128)
    for t, block in enumerate(
        ((a11 + a22) * 0.5, (a12 + a21) * 0.5, (a12 - a21) * 0.5j, (a11 - a22) * 0.5)
    ):
        if _branch_pruned(block, threshold):
            continue
        w[t * quarter : (t + 1) * quarter] = _tpd_weights(block, threshold)
    return w


def _tpd_weights_stack(blocks: np.ndarray, n: int) -> np.ndarray:
    """Weight rows for a stack of 2^n x 2^n matrices, one gemm per digit.

    Evaluates the same linear map as :func:`_tpd_weights` without the
    per-branch recursion: the (row bit, col bit) axes of each matrix
    interleave into quaternary digits and the one-factor kernel folds
    into each digit in place.  Identically-zero inputs still come out
    exactly zero (every contribution is a product with 0.0).
    """
    m = blocks.shape[0]
    order = (0,) + tuple(1 + x for x in _pair_axes(n))
    T = blocks.reshape((m,) + (2,) * (2 * n)).transpose(order).reshape(m, 4**n)
    for b in range(n):
        T = np.matmul(_B1_INV, T.reshape(m * 4**b, 4, -1))
    return T.reshape(m, 4**n)


def tpd(A, prune_threshold: float = 0.0) -> PauliWeights:
    """Pauli components of ``A`` by recursive block decomposition.

    Zero weight blocks are pruned exactly by default; a nonzero
    ``prune_threshold`` prunes (lossily) every branch whose largest entry
    magnitude falls below it.
    """
    M = _as_square(A)
    n = _qubit_count(M.shape[0])
    return PauliWeights(n=n, weights=_tpd_weights(M, prune_threshold))


def _weights_vector(w) -> np.ndarray:
    if isinstance(w, PauliWeights):
        return w.weights
    return np.asarray(w, dtype=np.complex128).reshape(-1)


def _weights_qubits(length: int) -> int:
    n = max((length.bit_length() - 1) // 2, 0)
    if length <= 0 or 4**n != length:
        raise DomainError(f"weight vector length {length} is not a power of four")
    return n


def _itpd_matrix(w: np.ndarray) -> np.ndarray:
    if w.shape[0] == 1:
        return w.reshape(1, 1).copy()
    quarter = w.shape[0] // 4
    parts = [_itpd_matrix(w[t * quarter : (t + 1) * quarter]) for t in range(4)]
    return cmw_compose(parts)


def itpd(w) -> np.ndarray:
    """Inverse of :func:`tpd`: rebuild ``sum_t w_t sigma_t``."""
    vec = _weights_vector(w)
    _weights_qubits(vec.shape[0])
    return _itpd_matrix(vec)


def tpd_vec(v, orientation: str = ROW_MAJOR) -> PauliWeights:
    """Pauli components of a vectorized matrix under ``orientation``."""
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    n = _weights_qubits(vec.shape[0])
    order = _check_orientation(orientation)
    return tpd(vec.reshape((2**n, 2**n), order=order))


def itpd_vec(w, orientation: str = ROW_MAJOR) -> np.ndarray:
    """Vectorize :func:`itpd` of ``w`` under ``orientation``."""
    vec = _weights_vector(w)
    _weights_qubits(vec.shape[0])
    order = _check_orientation(orientation)
    return itpd(vec).reshape(-1, order=order)


def _check_orientation(orientation: str) -> str:
    try:
        return _NUMPY_ORDER[orientation]
    except KeyError:
        raise DomainError(
            f"orientation {orientation!r} not in {sorted(_NUMPY_ORDER)}"
        ) from None
