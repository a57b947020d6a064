"""Dense linear-algebra kernels and the matrix text format."""

from .linalg import (
    RANK_RTOL,
    rank_cutoff,
    SvdFactors,
    as_matrix,
    least_squares,
    numerical_rank,
    pseudo_inverse,
    solve_eq_qp,
    svd,
    truncate_rank,
)
from .matrix_io import read_matrix, write_matrix

__all__ = [
    "RANK_RTOL",
    "rank_cutoff",
    "SvdFactors",
    "as_matrix",
    "least_squares",
    "numerical_rank",
    "pseudo_inverse",
    "read_matrix",
    "solve_eq_qp",
    "svd",
    "truncate_rank",
    "write_matrix",
]
