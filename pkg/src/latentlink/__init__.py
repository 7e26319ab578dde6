"""Effective channels and classical capacities for a single particle sent
through time-correlated noise at a superposition of times or paths."""

from ._version import __version__
from .capacity import (
    EXACT_CAPACITY,
    LOWER_BOUND,
    UPPER_BOUND,
    CapacityResult,
    Ensemble,
    analytic_upper_bound,
    control_state_dominance_check,
    holevo_information,
    maximize_reduced_over_region,
    oracle_holevo,
    orthogonal_lower_bound,
    reduced_capacity,
    von_neumann_entropy,
)
from .channels import (
    PAIR_SWAP,
    CorrelatedChannelSpec,
    QuantumChannel,
    VacuumExtendedUnitary,
    as_control_state,
    block_ppt_check,
    channel_from_map,
    channels_equal,
    choi,
    dephase_control,
    depolarizing_qubit_channel,
    effective_network,
    effective_single,
    effective_single_symmetric_decomposition,
    interference_operator,
    load_spec,
    pair_swap_network_channel,
    pauli_correlated,
    pauli_realization,
    permutation_joint,
    quantum_switch,
    save_spec,
    spec_from_dict,
    spec_to_dict,
    vacuum_interference_channel,
)
from .experiments import (
    ScanResult,
    dephasing_curve,
    fnorm_scatter,
    scan_network_correlated,
    scan_network_uncorrelated,
    scan_single_correlated,
    scan_single_uncorrelated,
    switch_capacity,
)
from .linalg import (
    PAULIS,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    singular_values,
)

__all__ = [
    "__version__",
    "EXACT_CAPACITY",
    "LOWER_BOUND",
    "UPPER_BOUND",
    "CapacityResult",
    "CorrelatedChannelSpec",
    "Ensemble",
    "PAIR_SWAP",
    "PAULIS",
    "QuantumChannel",
    "ScanResult",
    "VacuumExtendedUnitary",
    "analytic_upper_bound",
    "as_control_state",
    "block_ppt_check",
    "channel_from_map",
    "channels_equal",
    "choi",
    "control_state_dominance_check",
    "dephase_control",
    "dephasing_curve",
    "depolarizing_qubit_channel",
    "effective_network",
    "effective_single",
    "effective_single_symmetric_decomposition",
    "fnorm_scatter",
    "hermitian_eigenvalues",
    "holevo_information",
    "interference_operator",
    "kron",
    "load_spec",
    "maximize_reduced_over_region",
    "oracle_holevo",
    "orthogonal_lower_bound",
    "pair_swap_network_channel",
    "partial_trace",
    "partial_transpose",
    "pauli_correlated",
    "pauli_realization",
    "permutation_joint",
    "quantum_switch",
    "reduced_capacity",
    "save_spec",
    "scan_network_correlated",
    "scan_network_uncorrelated",
    "scan_single_correlated",
    "scan_single_uncorrelated",
    "singular_values",
    "spec_from_dict",
    "spec_to_dict",
    "switch_capacity",
    "vacuum_interference_channel",
    "von_neumann_entropy",
]
