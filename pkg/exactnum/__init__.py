"""
Exact rational arithmetic, dense linear algebra and the certified LP kernel.
"""
from .rational import format_rational, parse_rational, to_fraction_matrix, to_fraction_vector
from .linalg import eig_sym, inverse, matmul, nullspace, rank, solve, svd, svd_decompose
from .lp import LpOutcome, LpProblem, LpStatus, conic_combination, lp_solve, verify_outcome

__all__ = [
    'format_rational', 'parse_rational', 'to_fraction_matrix', 'to_fraction_vector',
    'eig_sym', 'inverse', 'matmul', 'nullspace', 'rank', 'solve', 'svd', 'svd_decompose',
    'LpOutcome', 'LpProblem', 'LpStatus', 'conic_combination', 'lp_solve', 'verify_outcome',
]
