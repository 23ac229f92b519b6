"""The convention map: pure mapping math, discovery, and its invariant."""

import numpy as np
import pytest

from conftest import primary_convert, requires_primary
from qiskit_bridge import timing, wire
from qiskit_bridge.conventions import BridgeError, ConventionMap, discover_convention_map, loads_map


def plain_map(**overrides) -> ConventionMap:
    fields = dict(
        vectorization="row-major",
        choi_factor_order="index-first",
        qubit_order="matching",
        ptm_transpose=False,
        ptm_scale=1.0,
        chi_scale_exponent=0,
    )
    fields.update(overrides)
    return ConventionMap(**fields)


def test_field_validation():
    with pytest.raises(BridgeError, match="vectorization"):
        plain_map(vectorization="diagonal-major")
    with pytest.raises(BridgeError, match="choi_factor_order"):
        plain_map(choi_factor_order="both")
    with pytest.raises(BridgeError, match="qubit_order"):
        plain_map(qubit_order="shuffled")


def test_serialization_roundtrip():
    m = plain_map(vectorization="column-major", ptm_transpose=True, ptm_scale=0.5, chi_scale_exponent=1)
    assert loads_map(m.dumps()) == m
    assert loads_map(m.dumps(probe_residuals={"kraus-s-gate": 1e-16})) == m


def test_loads_map_rejections():
    with pytest.raises(BridgeError, match="not valid JSON"):
        loads_map("][")
    with pytest.raises(BridgeError, match="JSON object"):
        loads_map("[]")
    with pytest.raises(BridgeError, match="fields"):
        loads_map('{"vectorization": "row-major"}')


def test_identity_map_is_a_passthrough():
    m = plain_map()
    M = np.arange(16, dtype=complex).reshape(4, 4)
    assert np.array_equal(m.can_to_external(M, 1), M)
    assert np.array_equal(m.choi_to_external(M, 1), M)
    assert np.array_equal(m.chi_to_external(M, 1), M)
    assert np.array_equal(m.ptm_to_wire(M, 1), M)


def test_can_restacking_swaps_kron_factors():
    # row-major rho -> K rho L+ is kron(K, conj(L)); column-major is kron(conj(L), K)
    rng = np.random.Generator(np.random.PCG64(3))
    K = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    L = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = plain_map(vectorization="column-major")
    got = m.can_to_external(np.kron(K, np.conj(L)), 1)
    assert np.allclose(got, np.kron(np.conj(L), K), atol=1e-14)
    # the restacking is an involution
    assert np.allclose(m.can_to_external(got, 1), np.kron(K, np.conj(L)), atol=1e-14)


def test_choi_factor_swap():
    rng = np.random.Generator(np.random.PCG64(4))
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = plain_map(choi_factor_order="image-first")
    assert np.allclose(m.choi_to_external(np.kron(A, B), 2), np.kron(B, A), atol=1e-14)


def test_chi_scaling_is_per_qubit():
    m = plain_map(chi_scale_exponent=1)
    X = np.eye(16, dtype=complex)
    assert np.allclose(m.chi_to_external(X, 2), 4.0 * X, atol=1e-14)


def test_ptm_output_transpose_and_scale():
    m = plain_map(ptm_transpose=True, ptm_scale=2.0)
    R = np.arange(16, dtype=complex).reshape(4, 4)
    assert np.array_equal(m.ptm_to_wire(R, 1), 2.0 * R.T)


def test_rank_reversal_permutes_base4_digits():
    m = plain_map(qubit_order="reversed")
    R = np.zeros((16, 16), dtype=complex)
    R[4 * 1 + 2, 4 * 3 + 0] = 1.0  # external rank digits (1,2) and (3,0)
    out = m.ptm_to_wire(R, 2)
    assert out[4 * 2 + 1, 4 * 0 + 3] == 1.0  # wire sees the digits reversed
    assert np.count_nonzero(out) == 1
    # chi input uses the same rank enumeration
    back = m.chi_to_external(out, 2)
    assert back[4 * 1 + 2, 4 * 3 + 0] == 1.0


# --- discovery (needs the framework) -----------------------------------


def test_discovery_fixes_a_map_with_tiny_residuals(cmap):
    again, report = discover_convention_map()
    assert again == cmap
    assert report and max(report.values()) < 1e-9
    assert loads_map(cmap.dumps(probe_residuals=report)) == cmap


@requires_primary
def test_fixed_map_reproduces_primary_ptms_on_random_instances(tmp_path, cmap):
    """20 random 1-2 qubit channels: mapped framework PTMs must land on
    the primary's within 1e-8 (the invariant the map is defined by)."""
    from qiskit_bridge.reference import run_reference_conversion

    worst = 0.0
    count = 0
    for n in (1, 2):
        for seed in range(10):
            bundle = wire.matrix_bundle("can", timing.gen_instance("dense", 2 * n, seed))
            ours = run_reference_conversion(bundle, cmap)
            theirs = primary_convert(tmp_path, bundle, tag=f"inv-{n}-{seed}")
            worst = max(worst, float(np.max(np.abs(ours.matrix - theirs.matrix))))
            count += 1
    assert count == 20
    assert worst <= 1e-8, f"convention map invariant violated: max deviation {worst:.3e}"
