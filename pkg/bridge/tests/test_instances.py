"""Boundary discipline and agreement on the shared seeded instances.

Timing comparisons are only meaningful if both harnesses time the same
inputs, so the instance recipe here must reproduce the primary's
exactly; that equality is checked through its ``gen`` command, not by
importing it.
"""

from pathlib import Path

import numpy as np
import pytest

import qiskit_bridge
from conftest import primary_bench, requires_primary, run_primary
from qiskit_bridge import timing, wire


def test_bridge_source_never_imports_the_primary():
    pkg_dir = Path(qiskit_bridge.__file__).parent
    offenders = [p.name for p in pkg_dir.glob("*.py") if "ptmkit" in p.read_text()]
    assert offenders == []


def test_gen_instance_shapes_and_determinism():
    A = timing.gen_instance("dense", 2, seed=9)
    assert A.shape == (4, 4) and A.dtype == np.complex128
    assert np.array_equal(A, timing.gen_instance("dense", 2, seed=9))
    D = timing.gen_instance("diagonal", 2, seed=9)
    assert np.array_equal(D, np.diag(np.diag(D)))
    assert not np.array_equal(A, timing.gen_instance("dense", 2, seed=10))


def test_gen_kraus_set_extends_the_stream():
    ops = timing.gen_kraus_set("dense", 1, seed=4, m=3)
    assert len(ops) == 3
    assert np.array_equal(ops[0], timing.gen_instance("dense", 1, seed=4))


def test_gen_instance_rejections():
    with pytest.raises(qiskit_bridge.BridgeError, match="instance kind"):
        timing.gen_instance("sparse", 1, seed=0)
    with pytest.raises(qiskit_bridge.BridgeError, match="n >= 1"):
        timing.gen_instance("dense", 0, seed=0)


@requires_primary
@pytest.mark.parametrize("kind", ["dense", "diagonal"])
@pytest.mark.parametrize("n,seed", [(1, 0), (2, 5), (3, 11)])
def test_instance_recipe_matches_the_primary(tmp_path, kind, n, seed):
    out = tmp_path / "inst.json"
    run_primary("gen", "--kind", kind, "--qubits", str(n), "--seed", str(seed), "--output", str(out))
    theirs = wire.loads(out.read_text())
    assert theirs.kind == "matrix" and theirs.qubits == n
    assert np.array_equal(theirs.matrix, timing.gen_instance(kind, n, seed))


@requires_primary
def test_timing_csv_is_shared_both_ways(tmp_path):
    # primary writes, bridge reads
    records = primary_bench(tmp_path, "--algorithms", "l-ptm", "--qubits", "1..2", "--repetitions", "1")
    assert [(r.algorithm, r.n) for r in records] == [("l-ptm", 1), ("l-ptm", 2)]

    # bridge merges a ref row in, primary appends to the same file
    csv_path = tmp_path / "t.csv"
    ref = wire.TimingRecord("ref-can-ptm", 1, "dense", 0, 1, 0.25, 0.0)
    csv_path.write_text(wire.dump_timings(wire.merge_timings(records, [ref])))
    run_primary("bench", "--algorithms", "r-ptm", "--qubits", "1", "--repetitions", "1", "--csv", str(csv_path))

    combined = wire.load_timings(csv_path.read_text())
    assert {r.algorithm for r in combined} == {"l-ptm", "ref-can-ptm", "r-ptm"}
    assert ref in combined
