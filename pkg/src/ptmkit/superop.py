"""Transfer matrices of operator-induced superoperators.

Five constructors, all returning the 4^n x 4^n transfer matrix in the
Pauli basis (rows/columns ordered by lexicographic rank):

* :func:`l_ptm`  -- rho |-> A rho
* :func:`r_ptm`  -- rho |-> rho A
* :func:`m_ptm`  -- rho |-> A1 rho A2
* :func:`c_ptm`  -- rho |-> [A, rho]
* :func:`ac_ptm` -- rho |-> {A, rho}

All of them walk the cumulative-weight block recursion of
:mod:`ptmkit.pauli` and accumulate Kronecker factors of the elementary
4x4 tables.  Three engineering rules keep this fast and exact:

1.  Branches whose weight block is identically zero are skipped, so
    structured inputs (diagonal, Pauli-sparse) cost far less than dense
    ones and their output zeros are exact, not rounded.
2.  No full-size Kronecker temporaries: an elementary table has at most
    four nonzero entries, and each contribution ``table (x) S`` is
    scattered into the preallocated output as four scaled block-adds.
3.  The recursion bottoms out at three qubits: the surviving leaf
    blocks are decomposed in one batched kernel fold (the same linear
    map as recursing to scalars, so identically-zero structure inside a
    leaf stays exactly zero) and contracted against a dense table of all
    64 three-qubit elementary transfer matrices built once per process.
    This keeps the Python frame count at O(4^(n-3)).

The commutator pair uses the halved tables and the splitting

    C(A)  = sum_t [ comm_h[t] (x) AC(cmw_t) + acomm_h[t] (x) C(cmw_t) ]
    AC(A) = sum_t [ acomm_h[t] (x) AC(cmw_t) + comm_h[t] (x) C(cmw_t) ]

with the t = 0 commutator branch vanishing identically (a scalar
commutes with everything), so each node fans out to seven live calls.
Scalar base cases: L/R return the scalar, M the product, C zero and AC
twice the scalar -- the last two are forced by [1, rho] = 0 and
{1, rho} = 2 rho.

Accumulation order is fixed (t ascending, then u) so results are
reproducible run to run.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import elementary as _tables
from .pauli import DomainError, _as_square, _qubit_count, _tpd_weights_stack, unrank

_LEAF = 3

_MM_BATCH_BYTES = 512 * 2**20  # broadcast-matmul budget for m_ptm leaf products


def _as_operator(A, what: str = "operator") -> tuple[np.ndarray, int]:
    M = _as_square(A, what)
    return M, _qubit_count(M.shape[0], what)


def _triples(matrix: np.ndarray) -> tuple[tuple[int, int, complex], ...]:
    rows, cols = np.nonzero(matrix)
    return tuple((int(i), int(j), complex(matrix[i, j])) for i, j in zip(rows, cols))


_LEFT_TRIPLES = tuple(_triples(_tables.LEFT[t]) for t in range(4))
_RIGHT_TRIPLES = tuple(_triples(_tables.RIGHT[t]) for t in range(4))
_COMM_H_TRIPLES = tuple(_triples(_tables.COMM_HALVED[t]) for t in range(4))
_ACOMM_H_TRIPLES = tuple(_triples(_tables.ACOMM_HALVED[t]) for t in range(4))
_SANDWICH_TRIPLES = tuple(
    tuple(_triples(_tables.SANDWICH[t, u]) for u in range(4)) for t in range(4)
)


@lru_cache(maxsize=None)
def _leaf_table(kind: str, n0: int) -> np.ndarray:
    """All 4^n0 elementary transfer matrices of ``kind`` for n0 qubits."""
    if kind == "comm":
        out = _leaf_table("left", n0) - _leaf_table("right", n0)
    elif kind == "acomm":
        out = _leaf_table("left", n0) + _leaf_table("right", n0)
    else:
        base = {"left": _tables.LEFT, "right": _tables.RIGHT}[kind]
        dim = 4**n0
        out = np.empty((dim, dim, dim), dtype=np.complex128)
        for rank in range(dim):
            factor = np.ones((1, 1), dtype=np.complex128)
            for d in unrank(rank, n0):
                factor = np.kron(factor, base[d])
            out[rank] = factor
    out.setflags(write=False)
    return out


def _leaf_flat(kind: str, n0: int) -> np.ndarray:
    table = _leaf_table(kind, n0)
    return table.reshape(table.shape[0], -1)


def _scatter(out4: np.ndarray, triples, S: np.ndarray) -> None:
    for i, j, v in triples:
        out4[i, :, j, :] += v * S


def _one_sided(A, kind: str) -> np.ndarray:
    M, n = _as_operator(A)
    n0 = min(_LEAF, n)
    triples = {"left": _LEFT_TRIPLES, "right": _RIGHT_TRIPLES}[kind]

    leaves, root = _cmw_tree(M, n - n0)
    P = _leaf_batch(leaves, kind, n0)

    def assemble(node, k: int) -> np.ndarray:
        if k == n0:
            return P[node]
        q = 4 ** (k - 1)
        out = np.zeros((4 * q, 4 * q), dtype=np.complex128)
        out4 = out.reshape(4, q, 4, q)
        for t in range(4):
            child = node[t]
            if child is None:
                continue
            _scatter(out4, triples[t], assemble(child, k - 1))
        return out

    return assemble(root, n)


def l_ptm(A) -> np.ndarray:
    """Transfer matrix of left multiplication ``rho |-> A rho``."""
    return _one_sided(A, "left")


def r_ptm(A) -> np.ndarray:
    """Transfer matrix of right multiplication ``rho |-> rho A``."""
    return _one_sided(A, "right")


def _cmw_tree(M: np.ndarray, depth: int):
    """Zero-pruned weight-block tree of ``depth`` levels.

    Internal nodes are 4-tuples (entry ``None`` marks a pruned branch);
    bottom nodes are indices into the returned list of leaf blocks.
    """
    leaves: list[np.ndarray] = []

    def build(X: np.ndarray, k: int):
        if k == 0:
            leaves.append(X)
            return len(leaves) - 1
        h = X.shape[0] // 2
        a11, a12 = X[:h, :h], X[:h, h:]
        a21, a22 = X[h:, :h], X[h:, h:]
        return tuple(
            None if not block.any() else build(block, k - 1)
            for block in (
                (a11 + a22) * 0.5,
                (a12 + a21) * 0.5,
                (a12 - a21) * 0.5j,
                (a11 - a22) * 0.5,
            )
        )

    return leaves, build(M, depth)


def _leaf_batch(leaves: list[np.ndarray], kind: str, n0: int) -> np.ndarray:
    dim = 4**n0
    if not leaves:  # an all-zero input prunes every branch
        return np.zeros((0, dim, dim), dtype=np.complex128)
    W = _tpd_weights_stack(np.stack(leaves), n0)
    return (W @ _leaf_flat(kind, n0)).reshape(len(leaves), dim, dim)


def m_ptm(A1, A2) -> np.ndarray:
    """Transfer matrix of the sandwich ``rho |-> A1 rho A2``.

    The weight-block tree of each input is built once and shared by all
    (t, u) branch pairs; leaf blocks compose as leaf-L @ leaf-R.
    """
    M1, n = _as_operator(A1, "first operator")
    M2, n2 = _as_operator(A2, "second operator")
    if n != n2:
        raise DomainError(f"operand dimension mismatch: {M1.shape} vs {M2.shape}")
    n0 = min(_LEAF, n)
    depth = n - n0

    leaves1, root1 = _cmw_tree(M1, depth)
    leaves2, root2 = _cmw_tree(M2, depth)
    L = _leaf_batch(leaves1, "left", n0)
    R = _leaf_batch(leaves2, "right", n0)

    if len(leaves1) * len(leaves2) * 16**n0 * 16 <= _MM_BATCH_BYTES:
        products = np.matmul(L[:, None], R[None, :])

        def pair(i: int, j: int) -> np.ndarray:
            return products[i, j]

    else:

        def pair(i: int, j: int) -> np.ndarray:
            return L[i] @ R[j]

    def assemble(node1, node2, k: int) -> np.ndarray:
        if k == n0:
            return pair(node1, node2)
        q = 4 ** (k - 1)
        out = np.zeros((4 * q, 4 * q), dtype=np.complex128)
        out4 = out.reshape(4, q, 4, q)
        for t in range(4):
            child1 = node1[t]
            if child1 is None:
                continue
            for u in range(4):
                child2 = node2[u]
                if child2 is None:
                    continue
                _scatter(out4, _SANDWICH_TRIPLES[t][u], assemble(child1, child2, k - 1))
        return out

    return assemble(root1, root2, n)


def _comm_pair(A, want_acomm: bool) -> np.ndarray:
    M, n = _as_operator(A)
    n0 = min(_LEAF, n)
    depth = n - n0

    leaves, root = _cmw_tree(M, depth)
    CP = _leaf_batch(leaves, "comm", n0)
    ACP = _leaf_batch(leaves, "acomm", n0)

    memo_c: dict = {}
    memo_ac: dict = {}

    def crec(node, k: int) -> np.ndarray:
        if k == n0:
            return CP[node]
        cached = memo_c.get(node)
        if cached is not None:
            return cached
        out = _combine(node, k, first=_COMM_H_TRIPLES, second=_ACOMM_H_TRIPLES)
        memo_c[node] = out
        return out

    def acrec(node, k: int) -> np.ndarray:
        if k == n0:
            return ACP[node]
        cached = memo_ac.get(node)
        if cached is not None:
            return cached
        out = _combine(node, k, first=_ACOMM_H_TRIPLES, second=_COMM_H_TRIPLES)
        memo_ac[node] = out
        return out

    def _combine(node, k: int, first, second) -> np.ndarray:
        # first (x) anticommutator-child + second (x) commutator-child;
        # the halved commutator table for t = 0 is empty, so that branch
        # never materializes.
        q = 4 ** (k - 1)
        out = np.zeros((4 * q, 4 * q), dtype=np.complex128)
        out4 = out.reshape(4, q, 4, q)
        for t in range(4):
            child = node[t]
            if child is None:
                continue
            if first[t]:
                _scatter(out4, first[t], acrec(child, k - 1))
            if second[t]:
                _scatter(out4, second[t], crec(child, k - 1))
        return out

    return acrec(root, n) if want_acomm else crec(root, n)


def c_ptm(A) -> np.ndarray:
    """Transfer matrix of the commutator ``rho |-> [A, rho]``."""
    return _comm_pair(A, want_acomm=False)


def ac_ptm(A) -> np.ndarray:
    """Transfer matrix of the anticommutator ``rho |-> {A, rho}``."""
    return _comm_pair(A, want_acomm=True)
