"""Cross-validation and timing baseline for the shared PTM wire formats.

Everything crosses the component boundary as representation bundles or
timing CSV; the conversions themselves belong to Qiskit, reached lazily
so the wire codec and instance recipes import cleanly without it.
"""

from .conventions import BridgeError, ConventionMap, discover_convention_map, loads_map
from .reference import run_reference_conversion
from .timing import REF_ALGORITHMS, BridgeBenchConfig, run_timing_suite
from .wire import Bundle, TimingRecord, WireError

__all__ = [
    "BridgeError",
    "Bundle",
    "BridgeBenchConfig",
    "ConventionMap",
    "REF_ALGORITHMS",
    "TimingRecord",
    "WireError",
    "discover_convention_map",
    "loads_map",
    "run_reference_conversion",
    "run_timing_suite",
]

__version__ = "0.1.0"
