"""Hard-coded one-qubit transfer tables against an independent brute force."""

import dataclasses

import numpy as np
import pytest

from ptmkit import elementary
from ptmkit.pauli import DomainError

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = (I2, X, Y, Z)


def ptm_entry(op, s: int, t: int) -> complex:
    """(s, t) transfer entry of a map, via 2^-1 tr(sigma_s op(sigma_t))."""
    return np.trace(SIGMA[s] @ op(SIGMA[t])) / 2


def brute_table(op) -> np.ndarray:
    return np.array([[ptm_entry(op, s, t) for t in range(4)] for s in range(4)])


def test_tables_match_bruteforce_exactly():
    for u, sigma in enumerate(SIGMA):
        assert np.array_equal(elementary.LEFT[u], brute_table(lambda rho: sigma @ rho))
        assert np.array_equal(elementary.RIGHT[u], brute_table(lambda rho: rho @ sigma))
        assert np.array_equal(
            elementary.COMM[u], brute_table(lambda rho: sigma @ rho - rho @ sigma)
        )
        assert np.array_equal(
            elementary.ACOMM[u], brute_table(lambda rho: sigma @ rho + rho @ sigma)
        )
        for v, tau in enumerate(SIGMA):
            assert np.array_equal(
                elementary.SANDWICH[u, v], brute_table(lambda rho: sigma @ rho @ tau)
            )


def test_left_table_spot_values():
    assert np.array_equal(elementary.LEFT[0], np.eye(4))
    assert np.array_equal(
        elementary.LEFT[1],
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]],
    )
    assert np.array_equal(
        elementary.LEFT[3],
        [[0, 0, 0, 1], [0, 0, -1j, 0], [0, 1j, 0, 0], [1, 0, 0, 0]],
    )


def test_right_table_is_left_conjugated():
    # right multiplication flips the sign of the imaginary parts
    for u in range(4):
        assert np.array_equal(elementary.RIGHT[u], elementary.LEFT[u].conj())


def test_comm_acomm_are_differences_and_sums():
    for u in range(4):
        assert np.array_equal(
            elementary.COMM[u], elementary.LEFT[u] - elementary.RIGHT[u]
        )
        assert np.array_equal(
            elementary.ACOMM[u], elementary.LEFT[u] + elementary.RIGHT[u]
        )
        assert np.array_equal(elementary.COMM_HALVED[u], 0.5 * elementary.COMM[u])
        assert np.array_equal(elementary.ACOMM_HALVED[u], 0.5 * elementary.ACOMM[u])


def test_comm_spot_values():
    assert np.array_equal(elementary.COMM[0], np.zeros((4, 4)))
    assert np.array_equal(
        elementary.COMM[3],
        [[0, 0, 0, 0], [0, 0, -2j, 0], [0, 2j, 0, 0], [0, 0, 0, 0]],
    )
    assert np.array_equal(elementary.ACOMM[0], 2 * np.eye(4))
    assert np.array_equal(
        elementary.ACOMM[2],
        [[0, 0, 2, 0], [0, 0, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0]],
    )


def test_sandwich_edges_reduce_to_one_sided_tables():
    for u in range(4):
        assert np.array_equal(elementary.SANDWICH[u, 0], elementary.LEFT[u])
        assert np.array_equal(elementary.SANDWICH[0, u], elementary.RIGHT[u])


def test_sandwich_conjugation_diagonals():
    assert np.array_equal(elementary.SANDWICH[1, 1], np.diag([1, 1, -1, -1]))
    assert np.array_equal(elementary.SANDWICH[2, 2], np.diag([1, -1, 1, -1]))
    assert np.array_equal(elementary.SANDWICH[3, 3], np.diag([1, -1, -1, 1]))


def test_sandwich_off_diagonal_spot_value():
    assert np.array_equal(
        elementary.SANDWICH[1, 2],
        [[0, 0, 0, -1j], [0, 0, 1, 0], [0, 1, 0, 0], [1j, 0, 0, 0]],
    )


def test_accessors_index_the_tables():
    for u in range(4):
        assert np.array_equal(elementary.eptm_left(u), elementary.LEFT[u])
        assert np.array_equal(elementary.eptm_right(u), elementary.RIGHT[u])
        assert np.array_equal(elementary.eptm_comm(u), elementary.COMM[u])
        assert np.array_equal(elementary.eptm_acomm(u), elementary.ACOMM[u])
        for v in range(4):
            assert np.array_equal(
                elementary.eptm_sandwich(u, v), elementary.SANDWICH[u, v]
            )
    with pytest.raises(ValueError):
        elementary.eptm_left(1)[0, 0] = 99.0


def test_accessors_reject_bad_digits():
    with pytest.raises(DomainError):
        elementary.eptm_left(4)
    with pytest.raises(DomainError):
        elementary.eptm_sandwich(0, -1)


def test_module_tables_are_readonly():
    for table in (
        elementary.LEFT,
        elementary.RIGHT,
        elementary.COMM,
        elementary.ACOMM,
        elementary.SANDWICH,
    ):
        with pytest.raises(ValueError):
            table[0] = 0.0


def test_tables_bundle_is_frozen():
    bundle = elementary.tables()
    with pytest.raises(dataclasses.FrozenInstanceError):
        bundle.left = None


def test_generate_tables_reproduces_constants():
    regenerated = elementary.generate_tables()
    for name in ("left", "right", "comm", "acomm", "sandwich", "comm_halved", "acomm_halved"):
        assert np.array_equal(getattr(regenerated, name), getattr(elementary.tables(), name))
