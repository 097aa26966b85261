"""Cholesky factorization of symmetric positive definite Toeplitz matrices.

Matrices cross the boundary as their first column (a list of floats);
triangular factors come back as a list of rows.
"""

from toepfact._core import (
    Error,
    cond_2,
    cybenko_bounds,
    decomposition_error,
    factor,
    from_reflection_coeffs,
    materialize,
    prolate,
    random_spd_toeplitz,
    reflection_coefficients,
    scaled_residual,
    solve,
)

__version__ = "1.0.0"

__all__ = [
    "Error",
    "cond_2",
    "cybenko_bounds",
    "decomposition_error",
    "factor",
    "from_reflection_coeffs",
    "materialize",
    "prolate",
    "random_spd_toeplitz",
    "reflection_coefficients",
    "scaled_residual",
    "solve",
]
