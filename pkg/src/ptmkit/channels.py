"""Conversions from channel representations into the Pauli transfer picture.

Representations handled here (all for an n-qubit channel E):

* ``can``  -- the 4^n x 4^n matrix acting on row-major vectorizations,
  ``vec(E(rho)) = Can @ vec(rho)``.
* ``choi`` -- ``sum_{k,l} E_kl (x) E(E_kl)`` over canonical matrix units
  (first tensor factor is the index, second the image).
* ``chi``  -- the Pauli process matrix, ``E(rho) = sum_{s,t} Chi[s,t]
  sigma_s rho sigma_t`` with both axes ordered by lexicographic rank.
* ``kraus`` -- generalized operator pairs, ``E(rho) = sum_i K_i rho
  L_i^dag`` (plain sets have L_i = K_i).
* ``ptm``  -- the target: entry (s, t) equals ``2^(-n) tr(sigma_s
  E(sigma_t))``.

The can/ptm and choi/chi exchanges are two-sided basis changes whose
transition matrix factorizes over tensor positions, so both passes are
applied as n contractions with a fixed 4x4 kernel per side instead of a
full-size matrix product.  Applying the row kernel to every row (and the
column kernel to every column) is exactly the vectorized Pauli
decomposition of that row/column -- the equivalence is pinned in the
tests -- and rows/columns are independent, so the passes batch freely
and large inputs are transformed stripe by stripe, each stripe staying
cache resident through all n folds.

With T the matrix whose columns are row-major vectorizations of the
Pauli strings (T^-1 = 2^-n T^dag):

* ``ptm = T^-1 @ can @ T``: per-row kernel = 2^n x column-major
  decomposition, per-column kernel = row-major decomposition.
* ``chi = D @ T^-1 @ choi @ (T^-1)^T`` where ``D`` carries the sign
  (-1)^(number of Y digits) -- the transpose of a Pauli string flips
  exactly its Y factors.  The same sign rule ("y-parity") fixes the
  partial-expansion coefficients of ``choi_to_ptm``:
  the first-factor weight block of the Choi matrix at string t equals
  ``2^-n (-1)^#Y(t) E(sigma_t)``.

The chi -> ptm conversion is a 16-way block recursion: block (s, t) of
the process matrix contributes ``sandwich_table[s, t] (x) (recursed
block)``; identically-zero blocks are pruned before recursing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import (
    DomainError,
    QuaternaryString,
    _as_square,
    _B1,
    _B1_INV,
    _pair_axes,
    _split_axes,
    _tpd_weights_stack,
    unrank,
)
from .superop import _SANDWICH_TRIPLES, _scatter, m_ptm
from .elementary import SANDWICH

CAN = "can"
CHOI = "choi"
CHI = "chi"
PTM = "ptm"
KRAUS = "kraus"
REP_KINDS = (CAN, CHOI, CHI, PTM, KRAUS)

KrausPairs = list[tuple[np.ndarray, np.ndarray]]


@dataclass
class ChannelRep:
    """A tagged channel representation (matrix kinds or operator pairs)."""

    kind: str
    qubits: int
    matrix: np.ndarray | None = None
    pairs: KrausPairs | None = None

    def __post_init__(self) -> None:
        if self.kind not in REP_KINDS:
            raise DomainError(f"unknown representation kind {self.kind!r}")
        if self.kind == KRAUS:
            if not self.pairs:
                raise DomainError("kraus representation needs at least one operator pair")
            dim = 2**self.qubits
            if any(K.shape != (dim, dim) or L.shape != (dim, dim) for K, L in self.pairs):
                raise DomainError(f"kraus operators must all be {dim}x{dim}")
        else:
            if self.matrix is None:
                raise DomainError(f"{self.kind} representation needs a matrix")
            dim = 4**self.qubits
            if self.matrix.shape != (dim, dim):
                raise DomainError(
                    f"{self.kind} matrix is {self.matrix.shape}, expected {dim}x{dim} "
                    f"for {self.qubits} qubits"
                )


def _rep_matrix(kind: str, M) -> ChannelRep:
    M, n = _as_rep_matrix(M)
    return ChannelRep(kind=kind, qubits=n, matrix=M)


def can_rep(M) -> ChannelRep:
    return _rep_matrix(CAN, M)


def choi_rep(M) -> ChannelRep:
    return _rep_matrix(CHOI, M)


def chi_rep(M) -> ChannelRep:
    return _rep_matrix(CHI, M)


def ptm_rep(M) -> ChannelRep:
    return _rep_matrix(PTM, M)


def kraus_rep(operators) -> ChannelRep:
    pairs = coerce_kraus_pairs(operators)
    n = pairs[0][0].shape[0].bit_length() - 1
    return ChannelRep(kind=KRAUS, qubits=n, pairs=pairs)


def coerce_kraus_pairs(operators) -> KrausPairs:
    """Normalize a list of matrices / (K, L) pairs; a bare matrix means L = K."""
    if operators is None:
        raise DomainError("kraus representation needs at least one operator pair")
    items = list(operators)
    if not items:
        raise DomainError("kraus representation needs at least one operator pair")
    pairs: KrausPairs = []
    for item in items:
        # A (K, L) pair is a 2-sequence of matrices; anything else is a
        # bare matrix (so a nested-list matrix is not mistaken for one).
        if isinstance(item, (tuple, list)) and len(item) == 2 and np.ndim(item[0]) == 2:
            K, L = item
            pairs.append((_as_square(K, "kraus operator"), _as_square(L, "kraus operator")))
        else:
            K = _as_square(item, "kraus operator")
            pairs.append((K, K))
    dim = pairs[0][0].shape[0]
    if dim & (dim - 1) or any(
        K.shape != (dim, dim) or L.shape != (dim, dim) for K, L in pairs
    ):
        raise DomainError("kraus operators must share one power-of-two dimension")
    return pairs


def _as_rep_matrix(M) -> tuple[np.ndarray, int]:
    M = _as_square(M, "representation matrix")
    bits = M.shape[0].bit_length() - 1
    if M.shape[0] != 4 ** (bits // 2) or bits % 2:
        raise DomainError(f"representation dimension {M.shape[0]} is not a power of four")
    return M, bits // 2


# The diagonal sign carried by the choi/chi exchange: transposing a
# Pauli string flips exactly its Y factors.
_DY = np.diag([1.0, 1.0, -1.0, 1.0]).astype(np.complex128)
_DY.setflags(write=False)

# Above this size a transform is applied stripe by stripe so each stripe
# undergoes all n digit folds while it is cache resident; the full-size
# variant would stream the whole matrix from memory once per digit.
_STRIPE_MIN_BYTES = 64 * 2**20
_STRIPE_BYTES = 8 * 2**20

# Tail folds of a column pass whose trailing block is this small run as
# one wide right-multiplication instead of many tiny batched products.
_TAIL_BLOCK = 16

_TAIL_KERNELS: dict[tuple[bytes, int], np.ndarray] = {}


def _tail_kernel(kernel: np.ndarray, post: int) -> np.ndarray:
    key = (kernel.tobytes(), post)
    W = _TAIL_KERNELS.get(key)
    if W is None:
        W = np.kron(kernel.T, np.eye(post, dtype=np.complex128))
        W.setflags(write=False)
        _TAIL_KERNELS[key] = W
    return W


@lru_cache(maxsize=None)
def _row_in_order(n: int) -> tuple[int, ...]:
    return _pair_axes(n) + (2 * n,)


@lru_cache(maxsize=None)
def _row_out_order(n: int) -> tuple[int, ...]:
    return _split_axes(n) + (2 * n,)


@lru_cache(maxsize=None)
def _col_in_order(n: int) -> tuple[int, ...]:
    return (0,) + tuple(1 + x for x in _pair_axes(n))


@lru_cache(maxsize=None)
def _col_out_order(n: int) -> tuple[int, ...]:
    return (0,) + tuple(1 + x for x in _split_axes(n))


def _rows_stripe(T: np.ndarray, kernel: np.ndarray, n: int, vec_in: bool, vec_out: bool) -> np.ndarray:
    """Fold ``kernel`` into every row-index digit of a (4^n, w) stripe.

    A vectorization index interleaves to one (row bit, col bit)
    quaternary digit per tensor position; a Pauli rank already is one
    digit per position.  Broadcasting the matmul over the leading axes
    transforms digit b in place, so every pass is a sequential
    read/write (no per-digit transposes, which dominate at large n).
    """
    d = 4**n
    if vec_in:
        T = T.reshape((2,) * (2 * n) + (-1,)).transpose(_row_in_order(n)).reshape(d, -1)
    for b in range(n):
        T = np.matmul(kernel, T.reshape(4**b, 4, -1))
    T = T.reshape(d, -1)
    if vec_out:
        T = T.reshape((2,) * (2 * n) + (-1,)).transpose(_row_out_order(n)).reshape(d, -1)
    return T


def _cols_stripe(T: np.ndarray, kernel: np.ndarray, n: int, vec_in: bool, vec_out: bool) -> np.ndarray:
    """Column-index counterpart of :func:`_rows_stripe` on an (h, 4^n) stripe."""
    d = 4**n
    m = T.shape[0]
    if vec_in:
        T = T.reshape((m,) + (2,) * (2 * n)).transpose(_col_in_order(n)).reshape(m, d)
    for b in range(n):
        post = 4 ** (n - 1 - b)
        if 4 * post <= _TAIL_BLOCK:
            T = T.reshape(-1, 4 * post) @ _tail_kernel(kernel, post)
        else:
            T = np.matmul(kernel, T.reshape(m * 4**b, 4, -1))
    T = T.reshape(m, d)
    if vec_out:
        T = T.reshape((m,) + (2,) * (2 * n)).transpose(_col_out_order(n)).reshape(m, d)
    return T


def _transform_rows(M: np.ndarray, kernel: np.ndarray, n: int, vec_in: bool, vec_out: bool) -> np.ndarray:
    d = 4**n
    T = np.asarray(M, dtype=np.complex128)
    if T.nbytes <= _STRIPE_MIN_BYTES:
        return _rows_stripe(T, kernel, n, vec_in, vec_out)
    out = np.empty_like(T)
    w = max(1, _STRIPE_BYTES // (16 * d))
    for j in range(0, d, w):
        out[:, j : j + w] = _rows_stripe(T[:, j : j + w], kernel, n, vec_in, vec_out)
    return out


def _transform_cols(M: np.ndarray, kernel: np.ndarray, n: int, vec_in: bool, vec_out: bool) -> np.ndarray:
    d = 4**n
    T = np.asarray(M, dtype=np.complex128)
    if T.nbytes <= _STRIPE_MIN_BYTES:
        return _cols_stripe(T, kernel, n, vec_in, vec_out)
    out = np.empty_like(T)
    h = max(1, _STRIPE_BYTES // (16 * d))
    for i in range(0, d, h):
        out[i : i + h, :] = _cols_stripe(T[i : i + h, :], kernel, n, vec_in, vec_out)
    return out


def can_to_ptm(M) -> np.ndarray:
    """Transfer matrix of the channel whose vectorized action is ``M``."""
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()
    rows_done = _transform_rows(M, _B1_INV, n, vec_in=True, vec_out=False)
    return _transform_cols(rows_done, _B1.T, n, vec_in=True, vec_out=False)


def ptm_to_can(M) -> np.ndarray:
    """Inverse of :func:`can_to_ptm` (rebuild kernels on both passes)."""
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()
    rows_done = _transform_rows(M, _B1, n, vec_in=False, vec_out=True)
    return _transform_cols(rows_done, _B1_INV.T, n, vec_in=False, vec_out=True)


def choi_to_chi(M) -> np.ndarray:
    """Pauli process matrix of the channel with Choi matrix ``M``."""
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()
    rows_done = _transform_rows(M, _DY @ _B1_INV, n, vec_in=True, vec_out=False)
    return _transform_cols(rows_done, _B1_INV, n, vec_in=True, vec_out=False)


def chi_to_choi(M) -> np.ndarray:
    """Inverse of :func:`choi_to_chi`."""
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()
    rows_done = _transform_rows(M, _B1 @ _DY, n, vec_in=False, vec_out=True)
    return _transform_cols(rows_done, _B1, n, vec_in=False, vec_out=True)


def _partial_expand(M: np.ndarray, n: int) -> dict[int, np.ndarray]:
    """First-factor weight blocks: M = sum_t sigma_t (x) blocks[t].

    Identically-zero blocks are pruned during the halving recursion and
    never appear in the result.
    """
    blocks: dict[int, np.ndarray] = {}

    def rec(X: np.ndarray, rank: int, k: int) -> None:
        if k == 0:
            blocks[rank] = X
            return
        h = X.shape[0] // 2
        a11, a12 = X[:h, :h], X[:h, h:]
        a21, a22 = X[h:, :h], X[h:, h:]
        for t, block in enumerate(
            ((a11 + a22) * 0.5, (a12 + a21) * 0.5, (a12 - a21) * 0.5j, (a11 - a22) * 0.5)
        ):
            if block.any():
                rec(block, rank * 4 + t, k - 1)

    rec(M, 0, n)
    return blocks


def partial_expand_first(M) -> dict[QuaternaryString, np.ndarray]:
    """Expand the first n tensor factors of a 4^n x 4^n matrix in the
    Pauli basis, leaving the remaining factors as matrix blocks.

    Strings whose block is identically zero are omitted.
    """
    M, n = _as_rep_matrix(M)
    if n == 0:
        raise DomainError("nothing to expand in a 1x1 matrix")
    return {unrank(rank, n): block for rank, block in _partial_expand(M, n).items()}


@lru_cache(maxsize=None)
def _y_parity_signs(n: int) -> np.ndarray:
    signs = np.ones(1)
    for _ in range(n):
        signs = np.kron([1.0, 1.0, -1.0, 1.0], signs)
    signs.setflags(write=False)
    return signs


def choi_to_ptm(M) -> np.ndarray:
    """Transfer matrix of the channel with Choi matrix ``M``.

    Column t of the result is ``2^n (-1)^#Y(t)`` times the Pauli weights
    of the t-th first-factor block (the "y-parity" coefficient rule).
    """
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()
    blocks = _partial_expand(M, n)
    out = np.zeros((4**n, 4**n), dtype=np.complex128)
    if not blocks:
        return out
    coeff = 2.0**n * _y_parity_signs(n)
    ranks = list(blocks)
    # Batch the per-block weight solves, in groups so the stacked copy
    # never rivals the output allocation.
    group = max(1, _STRIPE_BYTES // (16 * 4**n))
    for start in range(0, len(ranks), group):
        part = ranks[start : start + group]
        W = _tpd_weights_stack(np.stack([blocks[r] for r in part]), n)
        out[:, part] = (coeff[part][:, None] * W).T
    return out


def chi_to_ptm(M) -> np.ndarray:
    """Transfer matrix of the channel with Pauli process matrix ``M``."""
    M, n = _as_rep_matrix(M)
    if n == 0:
        return M.copy()

    def rec(X: np.ndarray, k: int) -> np.ndarray:
        if k == 1:
            return np.einsum("st,stab->ab", X, SANDWICH)
        q = 4 ** (k - 1)
        out = np.zeros((4 * q, 4 * q), dtype=np.complex128)
        out4 = out.reshape(4, q, 4, q)
        for s in range(4):
            for t in range(4):
                sub = X[s * q : (s + 1) * q, t * q : (t + 1) * q]
                if not sub.any():
                    continue
                _scatter(out4, _SANDWICH_TRIPLES[s][t], rec(sub, k - 1))
        return out

    return rec(M, n)


def kraus_to_ptm(operators) -> np.ndarray:
    """Transfer matrix of ``rho |-> sum_i K_i rho L_i^dag``."""
    pairs = coerce_kraus_pairs(operators)
    out = None
    for K, L in pairs:
        term = m_ptm(K, L.conj().T)
        out = term if out is None else out + term
    return out


def to_ptm(rep: ChannelRep) -> np.ndarray:
    """Dispatch a representation to its transfer-matrix conversion."""
    if rep.kind == CAN:
        return can_to_ptm(rep.matrix)
    if rep.kind == CHOI:
        return choi_to_ptm(rep.matrix)
    if rep.kind == CHI:
        return chi_to_ptm(rep.matrix)
    if rep.kind == KRAUS:
        return kraus_to_ptm(rep.pairs)
    raise DomainError(f"no conversion from {rep.kind!r} to the transfer matrix")
