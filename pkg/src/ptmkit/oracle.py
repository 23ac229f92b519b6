"""Slow, obviously-correct reference semantics.

Everything in this module is written for auditability, not speed: loops
over Pauli ranks, explicit inner products, full-size transition
matrices.  The fast recursive constructors are validated against these
functions, never the other way around.

``ptm_direct`` is the ground truth for every transfer-matrix
constructor: entry (s, t) is the Frobenius inner product of the s-th
Pauli string with the channel applied to the t-th.  ``apply_channel``
gives each representation its defining action on a density-matrix-sized
input; the Choi case routes through ``choi_to_chi`` rather than
duplicating partial-trace machinery.  A transfer matrix cannot be
applied to a matrix directly (it acts on Pauli weight vectors), so that
tag is rejected and :func:`apply_ptm` is provided separately.

Intended for n <= 3; costs grow like 64^n.
"""

from __future__ import annotations

import numpy as np

from .channels import CAN, CHI, CHOI, KRAUS, PTM, ChannelRep, choi_to_chi, kraus_rep
from .pauli import DomainError, _as_square, pauli_string, unrank
from .pauli import PauliWeights, frobenius_inner


class UnsupportedRepresentationError(DomainError):
    """The requested operation is not defined for this representation."""


def _pauli_list(n: int) -> list[np.ndarray]:
    return [pauli_string(unrank(t, n)) for t in range(4**n)]


def _check_rho(rep: ChannelRep, rho) -> np.ndarray:
    rho = _as_square(rho, "input matrix")
    if rho.shape[0] != 2**rep.qubits:
        raise DomainError(
            f"input is {rho.shape[0]}x{rho.shape[0]}, expected "
            f"{2**rep.qubits}x{2**rep.qubits} for {rep.qubits} qubits"
        )
    return rho


def apply_channel(rep: ChannelRep, rho) -> np.ndarray:
    """Apply a channel, given in any applicable representation, to rho."""
    rho = _check_rho(rep, rho)
    n = rep.qubits

    if rep.kind == KRAUS:
        out = np.zeros_like(rho)
        for K, L in rep.pairs:
            out += K @ rho @ L.conj().T
        return out

    if rep.kind == CAN:
        return (rep.matrix @ rho.reshape(-1)).reshape(rho.shape)

    if rep.kind == CHOI:
        chi = ChannelRep(kind=CHI, qubits=n, matrix=choi_to_chi(rep.matrix))
        return apply_channel(chi, rho)

    if rep.kind == CHI:
        paulis = _pauli_list(n)
        right = [rho @ p for p in paulis]
        out = np.zeros_like(rho)
        for s, left in enumerate(paulis):
            acc = np.zeros_like(rho)
            for t in range(len(paulis)):
                c = rep.matrix[s, t]
                if c != 0.0:
                    acc += c * right[t]
            out += left @ acc
        return out

    raise UnsupportedRepresentationError(
        "a transfer matrix acts on Pauli weight vectors, not on density "
        "matrices; use apply_ptm instead"
    )


def apply_ptm(M, rho) -> np.ndarray:
    """Apply a transfer matrix by moving through Pauli components."""
    M = _as_square(M, "transfer matrix")
    rho = _as_square(rho, "input matrix")
    n = rho.shape[0].bit_length() - 1
    if M.shape[0] != 4**n:
        raise DomainError(f"transfer matrix is {M.shape[0]}x{M.shape[0]}, expected {4**n}x{4**n}")
    weights = M @ pauli_decompose_direct(rho).weights
    out = np.zeros_like(rho)
    for t, p in enumerate(_pauli_list(n)):
        out += weights[t] * p
    return out


def ptm_direct(rep: ChannelRep) -> np.ndarray:
    """Transfer matrix entry by entry from the definition."""
    if rep.kind == PTM:
        raise UnsupportedRepresentationError("the representation already is a transfer matrix")
    n = rep.qubits
    paulis = _pauli_list(n)
    out = np.zeros((4**n, 4**n), dtype=np.complex128)
    for t in range(4**n):
        image = apply_channel(rep, paulis[t])
        for s in range(4**n):
            out[s, t] = frobenius_inner(paulis[s], image)
    return out


def pauli_decompose_direct(A) -> PauliWeights:
    """Pauli weights by explicit inner products (reference for tpd)."""
    A = _as_square(A, "matrix")
    n = A.shape[0].bit_length() - 1
    if A.shape[0] != 2**n:
        raise DomainError(f"dimension {A.shape[0]} is not a power of two")
    weights = np.zeros(4**n, dtype=np.complex128)
    for t, p in enumerate(_pauli_list(n)):
        weights[t] = frobenius_inner(p, A)
    return PauliWeights(n=n, weights=weights)


def transition_matrix(n: int, inverse: bool = False) -> np.ndarray:
    """Basis-change matrix between vectorized matrices and Pauli weights.

    Column t of the forward matrix is the row-major vectorization of the
    t-th Pauli string, so it maps weight vectors to vectorized matrices;
    the inverse is assembled from inner products against matrix units
    (each column is the decomposition of one unit) rather than by
    inverting or transposing the forward matrix.
    """
    if n < 1:
        raise DomainError("transition matrix needs n >= 1")
    dim = 2**n
    paulis = _pauli_list(n)
    out = np.zeros((4**n, 4**n), dtype=np.complex128)
    if not inverse:
        for t, p in enumerate(paulis):
            out[:, t] = p.reshape(-1)
        return out
    for k in range(dim):
        for l in range(dim):
            unit = np.zeros((dim, dim), dtype=np.complex128)
            unit[k, l] = 1.0
            for s, p in enumerate(paulis):
                out[s, k * dim + l] = frobenius_inner(p, unit)
    return out


def _y_parity_diag(n: int) -> np.ndarray:
    signs = [(-1.0) ** sum(d == 2 for d in unrank(t, n)) for t in range(4**n)]
    return np.diag(np.array(signs, dtype=np.complex128))


def build_can(rep: ChannelRep) -> ChannelRep:
    """Canonical matrix of a channel: column (k, l) is the vectorized
    image of the matrix unit E_kl."""
    n = rep.qubits
    dim = 2**n
    out = np.zeros((4**n, 4**n), dtype=np.complex128)
    for k in range(dim):
        for l in range(dim):
            unit = np.zeros((dim, dim), dtype=np.complex128)
            unit[k, l] = 1.0
            out[:, k * dim + l] = apply_channel(rep, unit).reshape(-1)
    return ChannelRep(kind=CAN, qubits=n, matrix=out)


def build_choi(rep: ChannelRep) -> ChannelRep:
    """Choi matrix as the literal sum of E_kl tensor E(E_kl)."""
    n = rep.qubits
    dim = 2**n
    out = np.zeros((4**n, 4**n), dtype=np.complex128)
    for k in range(dim):
        for l in range(dim):
            unit = np.zeros((dim, dim), dtype=np.complex128)
            unit[k, l] = 1.0
            out += np.kron(unit, apply_channel(rep, unit))
    return ChannelRep(kind=CHOI, qubits=n, matrix=out)


def build_chi(rep: ChannelRep) -> ChannelRep:
    """Pauli process matrix.

    For operator pairs the entries come straight from the definition:
    decomposing K_i = sum_s a_is sigma_s and L_i = sum_t b_it sigma_t
    gives Chi[s, t] = sum_i a_is * conj(b_it).  Anything else goes
    through the Choi matrix and the transition-matrix change of basis
    (with the y-parity signs absorbing the transpose on the index
    factor).
    """
    n = rep.qubits
    if rep.kind == KRAUS:
        out = np.zeros((4**n, 4**n), dtype=np.complex128)
        for K, L in rep.pairs:
            a = pauli_decompose_direct(K).weights
            b = pauli_decompose_direct(L).weights
            out += np.outer(a, b.conj())
        return ChannelRep(kind=CHI, qubits=n, matrix=out)
    choi = rep.matrix if rep.kind == CHOI else build_choi(rep).matrix
    tinv = transition_matrix(n, inverse=True)
    chi = _y_parity_diag(n) @ tinv @ choi @ tinv.T
    return ChannelRep(kind=CHI, qubits=n, matrix=chi)
