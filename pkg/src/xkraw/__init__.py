"""Exceptional Krawtchouk polynomials and the classical and quantum walks they solve."""
from .exactnum import EPS, LaurentSeries, PiMultiple, laurent_constant_term, rational_gcd
from .krawtchouk import (
    ModelConfig,
    XPolynomialTable,
    build_table,
    eigenvalue_classical,
    eigenvalue_quantum,
    f_factor,
    krawtchouk_eval,
    recurrence_coeffs,
    verify_sturm_liouville,
    xl_eval,
)
from .classical_walk import (
    gillespie_sample,
    matexp_oracle,
    rate_matrix,
    stationary,
    transition_matrix,
)
from .quantum_walk import (
    amplitude_matrix,
    hamiltonian,
    mu_gap,
    n0_value,
    perfect_return_time,
    pst_scan,
    revival_report,
    spectral_table,
)

__version__ = "0.1.0"
