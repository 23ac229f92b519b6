"""Shared fixtures: the primary CLI boundary and the fixed convention map.

The bridge never imports the reference implementation; every exchange
in these tests goes through its ``ptmkit`` command-line interface and
the wire formats.  Tests that need it skip when it is not on PATH, and
tests that need the external framework skip when qiskit is missing.
"""

from __future__ import annotations

import shutil
import subprocess

import pytest

from qiskit_bridge import wire

PTMKIT = shutil.which("ptmkit")

requires_primary = pytest.mark.skipif(
    PTMKIT is None, reason="the primary ptmkit CLI is not on PATH"
)


def all_output(result) -> str:
    """stdout plus stderr of a CliRunner result, across click versions."""
    text = result.output
    try:
        text += result.stderr
    except ValueError:
        pass  # older click mixes the streams into .output
    return text


def run_primary(*args: str) -> subprocess.CompletedProcess:
    proc = subprocess.run([PTMKIT, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        raise AssertionError(f"ptmkit {' '.join(args)} failed:\n{proc.stdout}{proc.stderr}")
    return proc


def primary_convert(tmp_path, bundle: wire.Bundle, tag: str = "x") -> wire.Bundle:
    """Push a channel bundle through the primary's converter."""
    src = tmp_path / f"{tag}.json"
    dst = tmp_path / f"{tag}.ptm.json"
    src.write_text(wire.dumps(bundle))
    run_primary("convert", "--from", bundle.kind, "--input", str(src), "--output", str(dst))
    return wire.loads(dst.read_text())


def primary_bench(tmp_path, *args: str, tag: str = "t") -> list[wire.TimingRecord]:
    """Run the primary's benchmark into a CSV and parse it back."""
    csv_path = tmp_path / f"{tag}.csv"
    run_primary("bench", *args, "--csv", str(csv_path))
    return wire.load_timings(csv_path.read_text())


@pytest.fixture(scope="session")
def cmap():
    """The convention map, discovered once and held fixed for the session."""
    pytest.importorskip("qiskit")
    from qiskit_bridge.conventions import discover_convention_map

    fixed, _report = discover_convention_map()
    return fixed
