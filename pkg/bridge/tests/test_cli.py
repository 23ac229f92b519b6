"""Command-line paths that fail before the framework is ever touched."""

import numpy as np
import pytest
from click.testing import CliRunner

from conftest import all_output
from qiskit_bridge import cli, wire


@pytest.fixture()
def runner():
    return CliRunner()


def test_convert_kind_mismatch_fails(tmp_path, runner):
    src = tmp_path / "chi.json"
    src.write_text(wire.dumps(wire.matrix_bundle("chi", np.eye(4))))
    result = runner.invoke(cli.main, [
        "convert", "--from", "can", "--input", str(src), "--output", str(tmp_path / "o.json"),
    ])
    assert result.exit_code == 1
    assert "bundle holds 'chi' but --from is 'can'" in all_output(result)


def test_convert_missing_input_fails(tmp_path, runner):
    result = runner.invoke(cli.main, [
        "convert", "--from", "can", "--input", str(tmp_path / "nope.json"),
        "--output", str(tmp_path / "o.json"),
    ])
    assert result.exit_code == 1


def test_convert_malformed_bundle_fails(tmp_path, runner):
    src = tmp_path / "bad.json"
    src.write_text("{not json")
    result = runner.invoke(cli.main, [
        "convert", "--from", "can", "--input", str(src), "--output", str(tmp_path / "o.json"),
    ])
    assert result.exit_code == 1
    assert "not valid JSON" in all_output(result)


def test_convert_rejects_bad_target(tmp_path, runner):
    result = runner.invoke(cli.main, [
        "convert", "--from", "can", "--to", "chi",
        "--input", str(tmp_path / "x.json"), "--output", str(tmp_path / "o.json"),
    ])
    assert result.exit_code == 2


def test_convert_rejects_bad_saved_map(tmp_path, runner):
    src = tmp_path / "can.json"
    src.write_text(wire.dumps(wire.matrix_bundle("can", np.eye(4))))
    bad = tmp_path / "map.json"
    bad.write_text('{"vectorization": "row-major"}\n')
    result = runner.invoke(cli.main, [
        "convert", "--from", "can", "--input", str(src), "--output", str(tmp_path / "o.json"),
        "--conventions", str(bad),
    ])
    assert result.exit_code == 1
    assert "fields" in all_output(result)


def test_bench_rejects_unknown_algorithm(runner):
    result = runner.invoke(cli.main, ["bench", "--algorithms", "can-ptm"])
    assert result.exit_code == 1
    assert "unknown algorithm" in all_output(result)


def test_bench_enforces_memory_budget(runner):
    result = runner.invoke(cli.main, ["bench", "--algorithms", "ref-can-ptm", "--qubits", "9"])
    assert result.exit_code == 1
    assert "exceeding" in all_output(result)


def test_bad_qubit_range_is_a_usage_error(runner):
    for text in ("many", "3..1", "0..2"):
        result = runner.invoke(cli.main, ["bench", "--qubits", text])
        assert result.exit_code == 2


def test_help_lists_subcommands(runner):
    result = runner.invoke(cli.main, ["--help"])
    assert result.exit_code == 0
    for name in ("discover", "convert", "bench"):
        assert name in result.output
