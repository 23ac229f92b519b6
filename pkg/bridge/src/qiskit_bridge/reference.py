"""Channel conversion through the reference framework.

The conversions themselves are entirely the framework's; this module
only moves data across the wire boundary: bundle in, framework objects
through ``qiskit.quantum_info``, PTM bundle out, with the discovered
:class:`~qiskit_bridge.conventions.ConventionMap` applied on the way in
and out.
"""

from __future__ import annotations

import numpy as np

from . import wire
from .conventions import BridgeError, ConventionMap, _quantum_info, discover_convention_map


def to_external(bundle: wire.Bundle, cmap: ConventionMap):
    """Wrap a channel bundle as the framework's native channel object."""
    qi = _quantum_info()
    n = bundle.qubits
    try:
        if bundle.kind == wire.CAN:
            return qi.SuperOp(cmap.can_to_external(bundle.matrix, n))
        if bundle.kind == wire.CHOI:
            return qi.Choi(cmap.choi_to_external(bundle.matrix, n))
        if bundle.kind == wire.CHI:
            return qi.Chi(cmap.chi_to_external(bundle.matrix, n))
        if bundle.kind == wire.KRAUS:
            pairs = bundle.pairs
            if all(np.array_equal(K, L) for K, L in pairs):
                return qi.Kraus([K for K, _ in pairs])
            return qi.Kraus(([K for K, _ in pairs], [L for _, L in pairs]))
    except BridgeError:
        raise
    except Exception as exc:
        raise BridgeError(f"the framework rejected the {bundle.kind} input: {exc}") from exc
    raise BridgeError(f"cannot run a reference conversion from kind {bundle.kind!r}")


def run_reference_conversion(
    bundle: wire.Bundle, cmap: ConventionMap | None = None, target: str = wire.PTM
) -> wire.Bundle:
    """Convert a channel bundle to a PTM bundle via the framework."""
    if target != wire.PTM:
        raise BridgeError(f"unsupported conversion target {target!r} (only 'ptm')")
    if bundle.kind not in wire.CHANNEL_KINDS:
        raise BridgeError(
            f"cannot run a reference conversion from kind {bundle.kind!r} "
            f"(expected one of {', '.join(wire.CHANNEL_KINDS)})"
        )
    if cmap is None:
        cmap, _ = discover_convention_map()
    qi = _quantum_info()
    channel = to_external(bundle, cmap)
    try:
        R = np.asarray(qi.PTM(channel).data)
    except Exception as exc:
        raise BridgeError(f"the framework failed to produce a PTM: {exc}") from exc
    return wire.Bundle(kind=wire.PTM, qubits=bundle.qubits, data=cmap.ptm_to_wire(R, bundle.qubits))
