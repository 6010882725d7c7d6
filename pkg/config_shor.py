"""
Configuration constants for the Shor arithmetic toolkit.
"""

# Cost model constants
COST_SETTINGS = {
    "toffoli_cnot_cost": 6,
    "ion_trap_t_cnot": 2.85e-4,  # seconds per CNOT
    "default_coding_factor": 1.0,
    "fit_coefficient": 217,
    "lower_bound_coefficient": 9,
    "lookup_overhead": 13,  # (n + 13) CNOTs per table entry in the windowed formula
}

# Sizes used by the asymptotic fit
FIT_N_VALUES = [256, 512, 1024, 2048, 4096, 8192]

# Exhaustive verification
VERIFY_SETTINGS = {
    "max_exhaustive_points": 2 ** 20,
    "batch_size": 4096,
    "bijection_max_qubits": 12,
    "exhaustive_max_bits": 4,
}

# Largest widths for which reports build circuits to measure counts
MEASURE_SETTINGS = {
    "primitive_max_bits": 16,
    "modexp_max_bits": 8,
}

# Desk-scale factoring
SHOR_SETTINGS = {
    "max_bits": 5,
    "max_attempts": 50,
    "default_shots": 4,
    "default_seed": 7,
    "support_threshold": 1e-12,
}
