"""
Módulo de utilidades de álgebra lineal.
"""
from .linalg import (
    asymmetry,
    density_matrix_violations,
    hermitian_eigh,
    hermitian_eigenvalues,
    singular_values,
    trace_norm,
    schatten_q_norm,
    trace_power,
    partial_trace,
    partial_transpose_a,
    partial_transpose_b,
    realign,
    swap_subsystems
)

__all__ = [
    'asymmetry',
    'density_matrix_violations',
    'hermitian_eigh',
    'hermitian_eigenvalues',
    'singular_values',
    'trace_norm',
    'schatten_q_norm',
    'trace_power',
    'partial_trace',
    'partial_transpose_a',
    'partial_transpose_b',
    'realign',
    'swap_subsystems'
]
