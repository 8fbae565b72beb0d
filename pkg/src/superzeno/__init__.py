"""Inverting-pulse sequences that suppress leakage out of a protected subspace."""
from superzeno.kernels import BACKEND
from superzeno.qcore import (
    Hamiltonian,
    SubspaceSplit,
    evolve_free,
    operator_norm,
    random_hamiltonian,
    transition_block,
)
from superzeno.sequences import (
    PulseSequence,
    make_sequence,
    optimal_sequence,
    periodic_sequence,
    pulse_count_formula,
    recursive_sequence,
    yoshida_sequence,
)
from superzeno.evolve import (
    LeakageReport,
    compose,
    cost_table,
    leakage,
    leakage_for_state,
    zeno_measurement_leakage,
)
from superzeno.analysis import (
    MatrixPolynomial,
    OrderEstimate,
    estimate_order,
    order_residual,
    search_sequence,
    series_of_sequence,
    verify_k_recursion,
)

__version__ = "0.1.0"
