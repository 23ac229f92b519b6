"""Elementary 4x4 transfer matrices for single-qubit superoperators.

The constants below are the transfer matrices (in the Pauli basis) of the
four building-block superoperators generated by a single Pauli matrix s:

* ``LEFT[t]``  -- rho |-> s_t rho
* ``RIGHT[t]`` -- rho |-> rho s_t
* ``COMM[t]``  -- rho |-> [s_t, rho]
* ``ACOMM[t]`` -- rho |-> {s_t, rho}
* ``SANDWICH[t, u]`` -- rho |-> s_t rho s_u

They are embedded as static data so the n-qubit recursions pay no startup
cost; :func:`generate_tables` recomputes every entry from first principles
through the brute-force oracle, and the test suite pins generated == static
exactly (all entries are sums of at most four unit-modulus terms halved, so
the float arithmetic is exact).

``COMM_HALVED``/``ACOMM_HALVED`` absorb the factor 1/2 used by the
commutator/anticommutator recursion so no scaling happens inside loops.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import DomainError

_I4 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

LEFT = np.array(
    [
        _I4,
        ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1j), (0, 0, 1j, 0)),
        ((0, 0, 1, 0), (0, 0, 0, 1j), (1, 0, 0, 0), (0, -1j, 0, 0)),
        ((0, 0, 0, 1), (0, 0, -1j, 0), (0, 1j, 0, 0), (1, 0, 0, 0)),
    ],
    dtype=np.complex128,
)

RIGHT = np.array(
    [
        _I4,
        ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1j), (0, 0, -1j, 0)),
        ((0, 0, 1, 0), (0, 0, 0, -1j), (1, 0, 0, 0), (0, 1j, 0, 0)),
        ((0, 0, 0, 1), (0, 0, 1j, 0), (0, -1j, 0, 0), (1, 0, 0, 0)),
    ],
    dtype=np.complex128,
)

COMM = np.array(
    [
        np.zeros((4, 4)),
        ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, -2j), (0, 0, 2j, 0)),
        ((0, 0, 0, 0), (0, 0, 0, 2j), (0, 0, 0, 0), (0, -2j, 0, 0)),
        ((0, 0, 0, 0), (0, 0, -2j, 0), (0, 2j, 0, 0), (0, 0, 0, 0)),
    ],
    dtype=np.complex128,
)

ACOMM = np.array(
    [
        np.multiply(2, _I4),
        ((0, 2, 0, 0), (2, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
        ((0, 0, 2, 0), (0, 0, 0, 0), (2, 0, 0, 0), (0, 0, 0, 0)),
        ((0, 0, 0, 2), (0, 0, 0, 0), (0, 0, 0, 0), (2, 0, 0, 0)),
    ],
    dtype=np.complex128,
)

SANDWICH = np.array(
    [
        [
            _I4,
            ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1j), (0, 0, -1j, 0)),
            ((0, 0, 1, 0), (0, 0, 0, -1j), (1, 0, 0, 0), (0, 1j, 0, 0)),
            ((0, 0, 0, 1), (0, 0, 1j, 0), (0, -1j, 0, 0), (1, 0, 0, 0)),
        ],
        [
            ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1j), (0, 0, 1j, 0)),
            ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)),
            ((0, 0, 0, -1j), (0, 0, 1, 0), (0, 1, 0, 0), (1j, 0, 0, 0)),
            ((0, 0, 1j, 0), (0, 0, 0, 1), (-1j, 0, 0, 0), (0, 1, 0, 0)),
        ],
        [
            ((0, 0, 1, 0), (0, 0, 0, 1j), (1, 0, 0, 0), (0, -1j, 0, 0)),
            ((0, 0, 0, 1j), (0, 0, 1, 0), (0, 1, 0, 0), (-1j, 0, 0, 0)),
            ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
            ((0, -1j, 0, 0), (1j, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
        ],
        [
            ((0, 0, 0, 1), (0, 0, -1j, 0), (0, 1j, 0, 0), (1, 0, 0, 0)),
            ((0, 0, -1j, 0), (0, 0, 0, 1), (1j, 0, 0, 0), (0, 1, 0, 0)),
            ((0, 1j, 0, 0), (-1j, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
            ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1)),
        ],
    ],
    dtype=np.complex128,
)

COMM_HALVED = COMM * 0.5
ACOMM_HALVED = ACOMM * 0.5

for _table in (LEFT, RIGHT, COMM, ACOMM, SANDWICH, COMM_HALVED, ACOMM_HALVED):
    _table.setflags(write=False)


@dataclass(frozen=True)
class ElementaryTables:
    left: np.ndarray
    right: np.ndarray
    comm: np.ndarray
    acomm: np.ndarray
    sandwich: np.ndarray
    comm_halved: np.ndarray
    acomm_halved: np.ndarray


def _check_digit(t: int) -> int:
    if t not in (0, 1, 2, 3):
        raise DomainError(f"Pauli digit {t} outside {{0,1,2,3}}")
    return t


def eptm_left(t: int) -> np.ndarray:
    return LEFT[_check_digit(t)]


def eptm_right(t: int) -> np.ndarray:
    return RIGHT[_check_digit(t)]


def eptm_comm(t: int) -> np.ndarray:
    return COMM[_check_digit(t)]


def eptm_acomm(t: int) -> np.ndarray:
    return ACOMM[_check_digit(t)]


def eptm_sandwich(t: int, u: int) -> np.ndarray:
    return SANDWICH[_check_digit(t), _check_digit(u)]


def tables() -> ElementaryTables:
    """The static tables (runtime source of truth)."""
    return ElementaryTables(LEFT, RIGHT, COMM, ACOMM, SANDWICH, COMM_HALVED, ACOMM_HALVED)


def generate_tables() -> ElementaryTables:
    """Recompute every table entry from first principles.

    Each entry is the brute-force transfer matrix of the corresponding
    single-qubit superoperator, expressed through generalized operator
    pairs (rho |-> sum_i K_i rho L_i^dag).  This is the independent route
    the tests compare against the static constants.
    """
    from .channels import kraus_rep
    from .oracle import ptm_direct
    from .pauli import pauli_matrix

    eye = np.eye(2, dtype=np.complex128)
    sigma = [pauli_matrix(t) for t in range(4)]

    left = np.stack([ptm_direct(kraus_rep([(sigma[t], eye)])) for t in range(4)])
    right = np.stack([ptm_direct(kraus_rep([(eye, sigma[t])])) for t in range(4)])
    comm = np.stack(
        [ptm_direct(kraus_rep([(sigma[t], eye), (eye, -sigma[t])])) for t in range(4)]
    )
    acomm = np.stack(
        [ptm_direct(kraus_rep([(sigma[t], eye), (eye, sigma[t])])) for t in range(4)]
    )
    sandwich = np.stack(
        [
            np.stack([ptm_direct(kraus_rep([(sigma[t], sigma[u])])) for u in range(4)])
            for t in range(4)
        ]
    )
    return ElementaryTables(
        left=left,
        right=right,
        comm=comm,
        acomm=acomm,
        sandwich=sandwich,
        comm_halved=comm * 0.5,
        acomm_halved=acomm * 0.5,
    )
