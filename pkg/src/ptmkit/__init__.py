"""Pauli transfer matrices for n-qubit superoperators.

Recursive tensor-product constructors with zero-pruning (`l_ptm`,
`r_ptm`, `m_ptm`, `c_ptm`, `ac_ptm`, and the can/choi/chi/kraus
conversions), a brute-force reference oracle, bundle/CSV serialization
and a benchmarking harness.  See the README for conventions.

Submodules load lazily: `import ptmkit` stays cheap, and the CLI can
adjust BLAS threading through the environment before numpy comes in.
"""

from importlib import import_module

__version__ = "0.1.0"

_LAZY = {
    # pauli: basis, decompositions, conventions
    "ROW_MAJOR": ".pauli", "COLUMN_MAJOR": ".pauli", "DomainError": ".pauli",
    "QuaternaryString": ".pauli", "PauliWeights": ".pauli", "CMWSet": ".pauli",
    "pauli_matrix": ".pauli", "pauli_string": ".pauli", "lex_rank": ".pauli",
    "unrank": ".pauli", "frobenius_inner": ".pauli",
    "cmw_decompose": ".pauli", "cmw_compose": ".pauli",
    "tpd": ".pauli", "itpd": ".pauli", "tpd_vec": ".pauli", "itpd_vec": ".pauli",
    # tables: elementary 1-qubit transfer matrices
    "ElementaryTables": ".elementary", "tables": ".elementary", "generate_tables": ".elementary",
    "eptm_left": ".elementary", "eptm_right": ".elementary", "eptm_comm": ".elementary",
    "eptm_acomm": ".elementary", "eptm_sandwich": ".elementary",
    # superop: operator-induced transfer matrices
    "l_ptm": ".superop", "r_ptm": ".superop", "m_ptm": ".superop",
    "c_ptm": ".superop", "ac_ptm": ".superop",
    # channels: representation conversions
    "ChannelRep": ".channels", "can_rep": ".channels", "choi_rep": ".channels",
    "chi_rep": ".channels", "ptm_rep": ".channels", "kraus_rep": ".channels",
    "can_to_ptm": ".channels", "ptm_to_can": ".channels",
    "choi_to_chi": ".channels", "chi_to_choi": ".channels",
    "choi_to_ptm": ".channels", "chi_to_ptm": ".channels", "kraus_to_ptm": ".channels",
    "partial_expand_first": ".channels", "to_ptm": ".channels",
    # oracle: slow reference semantics
    "apply_channel": ".oracle", "apply_ptm": ".oracle", "ptm_direct": ".oracle",
    "pauli_decompose_direct": ".oracle", "transition_matrix": ".oracle",
    "build_can": ".oracle", "build_choi": ".oracle", "build_chi": ".oracle",
    "UnsupportedRepresentationError": ".oracle",
    # bundles: serialization
    "RepBundle": ".bundles", "TimingRecord": ".bundles", "BundleFormatError": ".bundles",
    "read_bundle": ".bundles", "write_bundle": ".bundles",
    "read_timings": ".bundles", "write_timings": ".bundles",
    "matrix_bundle": ".bundles", "kraus_bundle": ".bundles", "CONVENTION": ".bundles",
    # bench: instances and timing
    "BenchConfig": ".bench", "gen_instance": ".bench", "gen_operator_pair": ".bench",
    "gen_kraus_set": ".bench", "run_bench": ".bench", "time_algorithm": ".bench",
    "upsert_records": ".bench", "fit_log2_slope": ".bench",
}

__all__ = sorted(_LAZY) + ["__version__"]


def __getattr__(name: str):
    try:
        module = _LAZY[name]
    except KeyError:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}") from None
    value = getattr(import_module(module, __name__), name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals()) | set(_LAZY))
