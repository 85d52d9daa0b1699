"""Chromatic numbers of abelian Cayley graphs through Heuberger matrices.

Matrices are lists of rows of Python ints.
"""

from ._heuberger import (
    BudgetExceeded,
    CapExceeded,
    DimensionError,
    DomainError,
    Error,
    ParseError,
    chi_bounds,
    chromatic_number,
    circulant_to_matrix,
    cross_product,
    cube_like_matrix,
    distance_to_matrix,
    hnf,
    kernel,
    lattice_equal,
    matrix_to_circulant,
    matrix_to_distance,
    payan_analyze,
    payan_check,
    qnd_matrix,
    snf,
    verify_chain,
)

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "DimensionError",
    "DomainError",
    "Error",
    "ParseError",
    "chi_bounds",
    "chromatic_number",
    "circulant_to_matrix",
    "cross_product",
    "cube_like_matrix",
    "distance_to_matrix",
    "hnf",
    "kernel",
    "lattice_equal",
    "matrix_to_circulant",
    "matrix_to_distance",
    "payan_analyze",
    "payan_check",
    "qnd_matrix",
    "snf",
    "verify_chain",
]
