"""Reference conversions through the framework, against pinned targets.

Target transfer matrices are written out by hand from the definitions
(wire convention): conjugation by X fixes I and X and flips Y and Z;
the one-sided map rho -> X rho Z sends I to -iY, X to Z, Y to iI and
Z to X; the chi matrix with a single 1 at (0,0) is the identity channel.
"""

import numpy as np
import pytest
from click.testing import CliRunner

from conftest import primary_convert, requires_primary
from qiskit_bridge import BridgeError, cli, loads_map, timing, wire
from qiskit_bridge.reference import run_reference_conversion

pytest.importorskip("qiskit")

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

PTM_CONJ_X = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
PTM_X_DOT_Z = np.array(
    [[0, 0, 1j, 0], [0, 0, 0, 1], [-1j, 0, 0, 0], [0, 1, 0, 0]], dtype=complex
)


def maxdev(got, want) -> float:
    return float(np.max(np.abs(got - want)))


def test_kraus_conjugation_by_x(cmap):
    out = run_reference_conversion(wire.kraus_bundle([(X, X)]), cmap)
    assert out.kind == "ptm" and out.qubits == 1
    assert maxdev(out.matrix, PTM_CONJ_X) <= 1e-10


def test_chi_unit_is_the_identity_channel(cmap):
    chi = np.zeros((4, 4), dtype=complex)
    chi[0, 0] = 1.0
    out = run_reference_conversion(wire.matrix_bundle("chi", chi), cmap)
    assert maxdev(out.matrix, np.eye(4)) <= 1e-10


def test_generalized_kraus_pair(cmap):
    out = run_reference_conversion(wire.kraus_bundle([(X, Z)]), cmap)
    assert maxdev(out.matrix, PTM_X_DOT_Z) <= 1e-10


def test_all_channel_kinds_are_accepted(cmap):
    for kind in ("can", "choi", "chi"):
        bundle = wire.matrix_bundle(kind, timing.gen_instance("dense", 2, seed=1))
        out = run_reference_conversion(bundle, cmap)
        assert out.kind == "ptm" and out.qubits == 1


def test_rejects_non_channel_bundles(cmap):
    with pytest.raises(BridgeError, match="kind 'ptm'"):
        run_reference_conversion(wire.matrix_bundle("ptm", np.eye(4)), cmap)
    with pytest.raises(BridgeError, match="kind 'matrix'"):
        run_reference_conversion(wire.matrix_bundle("matrix", np.eye(2)), cmap)
    with pytest.raises(BridgeError, match="target"):
        run_reference_conversion(wire.matrix_bundle("can", np.eye(4)), cmap, target="chi")


@requires_primary
def test_random_choi_matches_the_primary(tmp_path, cmap):
    bundle = wire.matrix_bundle("choi", timing.gen_instance("dense", 4, seed=21))
    ours = run_reference_conversion(bundle, cmap)
    theirs = primary_convert(tmp_path, bundle)
    assert maxdev(ours.matrix, theirs.matrix) <= 1e-8


# --- command line -------------------------------------------------------


@pytest.fixture()
def runner():
    return CliRunner()


def test_cli_discover_then_convert(tmp_path, runner):
    map_path = tmp_path / "conventions.json"
    result = runner.invoke(cli.main, ["discover", "--output", str(map_path)])
    assert result.exit_code == 0, result.output
    assert "wrote convention map" in result.output
    assert map_path.exists()

    chi = np.zeros((4, 4), dtype=complex)
    chi[0, 0] = 1.0
    src = tmp_path / "chi.json"
    dst = tmp_path / "out.json"
    src.write_text(wire.dumps(wire.matrix_bundle("chi", chi)))
    result = runner.invoke(cli.main, [
        "convert", "--from", "chi", "--input", str(src), "--output", str(dst),
        "--conventions", str(map_path),
    ])
    assert result.exit_code == 0, result.output
    out = wire.loads(dst.read_text())
    assert maxdev(out.matrix, np.eye(4)) <= 1e-10
    # a saved map was used, so no sidecar map is written
    assert not (tmp_path / "out.json.conventions.json").exists()


def test_cli_convert_discovers_and_saves_a_sidecar_map(tmp_path, runner):
    src = tmp_path / "kraus.json"
    dst = tmp_path / "out.json"
    src.write_text(wire.dumps(wire.kraus_bundle([(X, X)])))
    result = runner.invoke(cli.main, ["convert", "--from", "kraus", "--input", str(src), "--output", str(dst)])
    assert result.exit_code == 0, result.output
    side = tmp_path / "out.json.conventions.json"
    assert side.exists()
    saved = loads_map(side.read_text())
    assert maxdev(wire.loads(dst.read_text()).matrix, PTM_CONJ_X) <= 1e-10
    assert saved.ptm_scale != 0


def test_cli_bench_writes_ref_rows(tmp_path, runner):
    csv_path = tmp_path / "t.csv"
    result = runner.invoke(cli.main, [
        "bench", "--algorithms", "ref-can-ptm", "--qubits", "1..2",
        "--repetitions", "1", "--csv", str(csv_path),
    ])
    assert result.exit_code == 0, result.output
    records = wire.load_timings(csv_path.read_text())
    assert [(r.algorithm, r.n) for r in records] == [("ref-can-ptm", 1), ("ref-can-ptm", 2)]
