"""Wire formats: JSON rep bundles and the timing CSV."""

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptmkit.bundles import (
    BUNDLE_KINDS,
    BundleFormatError,
    RepBundle,
    TimingRecord,
    kraus_bundle,
    matrix_bundle,
    read_bundle,
    read_timings,
    write_bundle,
    write_timings,
)
from ptmkit.pauli import DomainError

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

seeds = st.integers(0, 2**31 - 1)
matrix_kinds = st.sampled_from([k for k in BUNDLE_KINDS if k != "kraus"])


def rand_matrix(dim: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))


@given(kind=matrix_kinds, seed=seeds, qubits=st.integers(1, 2))
@settings(max_examples=25, deadline=None)
def test_matrix_bundle_roundtrip_is_exact(kind, seed, qubits):
    dim = 2**qubits if kind == "matrix" else 4**qubits
    bundle = matrix_bundle(kind, rand_matrix(dim, seed))
    back = read_bundle(write_bundle(bundle))
    assert back.kind == kind and back.qubits == qubits
    assert np.array_equal(back.matrix, bundle.matrix)


@given(seed=seeds)
@settings(max_examples=15, deadline=None)
def test_kraus_bundle_roundtrip_keeps_pair_structure(seed):
    ops = [rand_matrix(2, seed), (rand_matrix(2, seed + 1), rand_matrix(2, seed + 2))]
    back = read_bundle(write_bundle(kraus_bundle(ops)))
    assert back.kind == "kraus" and len(back.pairs) == 2
    assert np.array_equal(back.pairs[0][0], back.pairs[0][1])
    np.testing.assert_array_equal(back.pairs[1][0], np.asarray(ops[1][0]))
    np.testing.assert_array_equal(back.pairs[1][1], np.asarray(ops[1][1]))


def test_equal_pair_collapses_to_one_matrix_on_the_wire():
    text = write_bundle(kraus_bundle([(X, X.copy())]))
    data = json.loads(text)["data"]
    # one operator, encoded at bare-matrix depth
    assert len(data) == 1
    assert isinstance(data[0][0][0][0], float)
    assert np.array_equal(read_bundle(text).pairs[0][1], X)


def test_distinct_pair_is_encoded_one_level_deeper():
    data = json.loads(write_bundle(kraus_bundle([(X, Y)])))["data"]
    assert len(data) == 1 and len(data[0]) == 2
    assert isinstance(data[0][0][0][0], list)


def test_golden_bytes_for_identity_ptm():
    text = write_bundle(matrix_bundle("ptm", np.eye(4)))
    expected = (
        '{"convention":{"choi_sign_rule":"y-parity","vector_orientation":"row-major"},'
        '"data":[[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]],'
        '[[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]],'
        '[[0.0,0.0],[0.0,0.0],[1.0,0.0],[0.0,0.0]],'
        '[[0.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]],'
        '"kind":"ptm","qubits":1}\n'
    )
    assert text == expected
    assert write_bundle(matrix_bundle("ptm", np.eye(4))) == text


def test_read_accepts_any_key_order():
    text = (
        '{"qubits": 1, "data": [[[0.0,0.0],[1.0,0.0]],[[1.0,0.0],[0.0,0.0]]], '
        '"kind": "matrix", '
        '"convention": {"vector_orientation": "row-major", "choi_sign_rule": "y-parity"}}'
    )
    assert np.array_equal(read_bundle(text).matrix, X)


def _doc(**overrides):
    doc = json.loads(write_bundle(matrix_bundle("can", np.eye(4))))
    doc.update(overrides)
    return json.dumps(doc)


def test_read_rejects_schema_violations():
    with pytest.raises(BundleFormatError, match="not valid JSON"):
        read_bundle("{")
    with pytest.raises(BundleFormatError, match="expected a JSON object"):
        read_bundle("[1, 2]")
    with pytest.raises(BundleFormatError, match="comment: unknown field"):
        read_bundle(_doc(comment="hi"))
    with pytest.raises(BundleFormatError, match="qubits: missing field"):
        doc = json.loads(_doc())
        del doc["qubits"]
        read_bundle(json.dumps(doc))
    with pytest.raises(BundleFormatError, match="unknown kind"):
        read_bundle(_doc(kind="super"))
    with pytest.raises(BundleFormatError, match="qubits: expected an integer"):
        read_bundle(_doc(qubits=True))
    with pytest.raises(BundleFormatError, match="qubits: must be >= 1"):
        read_bundle(_doc(qubits=0))
    with pytest.raises(BundleFormatError, match="convention.choi_sign_rule: missing"):
        read_bundle(_doc(convention={"vector_orientation": "row-major"}))
    with pytest.raises(BundleFormatError, match="convention.vector_orientation: unsupported value"):
        read_bundle(
            _doc(
                convention={
                    "vector_orientation": "column-major",
                    "choi_sign_rule": "y-parity",
                }
            )
        )


def test_read_rejects_malformed_data():
    with pytest.raises(BundleFormatError, match=r"data: has 4 rows, expected 16"):
        read_bundle(_doc(qubits=2))
    with pytest.raises(BundleFormatError, match=r"data\[0\]\[1\]: expected a \[re, im\] pair"):
        bad = json.loads(_doc())
        bad["data"][0][1] = 7
        read_bundle(json.dumps(bad))
    with pytest.raises(BundleFormatError, match=r"data\[1\]\[0\]\[0\]: expected a number"):
        bad = json.loads(_doc())
        bad["data"][1][0] = ["one", 0.0]
        read_bundle(json.dumps(bad))
    with pytest.raises(BundleFormatError, match=r"non-finite"):
        # json.loads accepts bare Infinity, so the reader must reject it
        text = _doc().replace("[1.0, 0.0]", "[Infinity, 0.0]", 1)
        assert "Infinity" in text
        read_bundle(text)
    with pytest.raises(BundleFormatError, match=r"data\[0\]: an operator pair"):
        bad = json.loads(write_bundle(kraus_bundle([(X, Y)])))
        bad["data"][0].append(bad["data"][0][0])
        read_bundle(json.dumps(bad))
    with pytest.raises(BundleFormatError, match="data: expected a non-empty list"):
        bad = json.loads(write_bundle(kraus_bundle([X])))
        bad["data"] = []
        read_bundle(json.dumps(bad))


def test_bundle_validation():
    with pytest.raises(DomainError, match="unknown bundle kind"):
        RepBundle(kind="dense", qubits=1, data=np.eye(2))
    with pytest.raises(DomainError, match="qubits >= 1"):
        RepBundle(kind="matrix", qubits=0, data=np.eye(1))
    with pytest.raises(DomainError, match="unsupported convention"):
        RepBundle(kind="matrix", qubits=1, data=np.eye(2), convention={})
    with pytest.raises(DomainError, match="expected 4x4"):
        RepBundle(kind="ptm", qubits=1, data=np.eye(2))
    with pytest.raises(DomainError, match="finite"):
        RepBundle(kind="matrix", qubits=1, data=np.array([[np.inf, 0], [0, 0]]))
    with pytest.raises(DomainError, match="at least one operator"):
        RepBundle(kind="kraus", qubits=1, data=[])


def test_bundle_accessor_guards():
    mat = matrix_bundle("matrix", X)
    assert np.array_equal(mat.matrix, X)
    with pytest.raises(DomainError):
        mat.pairs
    with pytest.raises(DomainError):
        mat.channel_rep()
    kb = kraus_bundle([X])
    with pytest.raises(DomainError):
        kb.matrix
    rep = matrix_bundle("chi", np.eye(16)).channel_rep()
    assert rep.kind == "chi" and rep.qubits == 2
    assert kb.channel_rep().kind == "kraus"


def test_matrix_bundle_infers_qubits_per_kind():
    assert matrix_bundle("matrix", np.eye(4)).qubits == 2
    assert matrix_bundle("ptm", np.eye(4)).qubits == 1
    assert matrix_bundle("choi", np.eye(64)).qubits == 3
    assert kraus_bundle([np.eye(4)]).qubits == 2


def test_timing_record_validation_and_key():
    rec = TimingRecord("l-ptm", 3, "dense", 0, 5, 1.5e-3, 0.0)
    assert rec.key == ("l-ptm", 3, 0, "dense", 5)
    with pytest.raises(DomainError):
        TimingRecord("l-ptm", 3, "dense", 0, 0, 1.0, 0.0)
    with pytest.raises(DomainError):
        TimingRecord("l-ptm", 3, "dense", 0, 1, 0.0, 0.0)
    with pytest.raises(DomainError):
        TimingRecord("l-ptm", 3, "dense", 0, 1, 1.0, -1.0)


def test_timings_roundtrip_exactly():
    records = [
        TimingRecord("l-ptm", 4, "dense", 0, 3, 0.1 + 1e-17, 1e-300),
        TimingRecord("can-to-ptm", 6, "diagonal", 17, 1, 2.0, 0.25),
    ]
    text = write_timings(records)
    lines = text.splitlines()
    assert lines[0] == "algorithm,n,instance_kind,seed,repetitions,mean_seconds,std_seconds"
    assert read_timings(text) == records


def test_timings_reader_is_strict():
    good = write_timings([TimingRecord("l-ptm", 4, "dense", 0, 3, 0.5, 0.0)])
    with pytest.raises(BundleFormatError, match="empty"):
        read_timings("")
    with pytest.raises(BundleFormatError, match="unexpected header"):
        read_timings("a,b\n1,2\n")
    with pytest.raises(BundleFormatError, match="columns"):
        read_timings(good + "l-ptm,4,dense\n")
    with pytest.raises(BundleFormatError, match="row 2"):
        read_timings(good + "l-ptm,x,dense,0,3,0.5,0.0\n")
    assert len(read_timings(good + "\n\n")) == 1
