"""Real coordinates for n x n Hermitian matrices.

Coordinate order: the n diagonal entries, then for each pair i < j (row-major)
the pair (s_ij, a_ij) with entry (i, j) = s_ij - i*a_ij, i.e. the matrix is
sum_i d_i E_ii + sum_{i<j} s_ij (E_ij + E_ji) + a_ij (-i E_ij + i E_ji).
For n = 2 the off-diagonal basis elements are the Pauli matrices X and Y.
"""
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np

from exactnum.linalg import as_exact, eig_sym
from exactnum.rational import is_exact
from utils.config import DEFAULT_TOL
from utils.exceptions import DimensionMismatchError


def hermitian_dim(n: int) -> int:
    return n * n


def off_diagonal_pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _check(v: Sequence, n: int) -> None:
    if len(v) != n * n:
        raise DimensionMismatchError(n * n, len(v), f"Hermitian coordinates for n={n}")


def vector_to_parts(v: Sequence, n: int, functional: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """(Re, Im) of the Hermitian matrix with coordinates v.

    With functional=True the off-diagonal coordinates are halved, giving the matrix W
    with tr(W H) = w . v(H) for every Hermitian H.
    """
    _check(v, n)
    exact = is_exact(v)
    values = as_exact(v) if exact else np.array(v, dtype=float)
    zero = Fraction(0) if exact else 0.0
    re = np.full((n, n), zero, dtype=object if exact else float)
    im = np.full((n, n), zero, dtype=object if exact else float)
    for i in range(n):
        re[i, i] = values[i]
    half = (Fraction(1, 2) if exact else 0.5) if functional else (Fraction(1) if exact else 1.0)
    k = n
    for i, j in off_diagonal_pairs(n):
        s, a = values[k] * half, values[k + 1] * half
        re[i, j] = s
        re[j, i] = s
        im[i, j] = -a
        im[j, i] = a
        k += 2
    return re, im


def parts_to_vector(re: Any, im: Any) -> np.ndarray:
    """Coordinates of the Hermitian matrix Re + i Im (inverse of vector_to_parts)."""
    re = np.asarray(re)
    im = np.asarray(im)
    n = re.shape[0]
    exact = re.dtype == object
    out = np.empty(n * n, dtype=object if exact else float)
    for i in range(n):
        out[i] = re[i, i]
    k = n
    for i, j in off_diagonal_pairs(n):
        out[k] = re[i, j]
        out[k + 1] = -im[i, j]
        k += 2
    return out


def vector_to_complex(v: Sequence, n: int, functional: bool = False) -> np.ndarray:
    re, im = vector_to_parts([float(x) for x in v], n, functional)
    return np.array(re, dtype=float) + 1j * np.array(im, dtype=float)


def complex_to_vector(h: Any) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    return parts_to_vector(h.real, h.imag)


def real_embedding(re: Any, im: Any) -> np.ndarray:
    """Symmetric real matrix [[Re, -Im], [Im, Re]]; its spectrum is that of Re + i Im, doubled."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    return np.block([[re, -im], [im, re]])


def min_eigenvalue_of_vector(v: Sequence, n: int, functional: bool = False, tol: float = DEFAULT_TOL) -> float:
    re, im = vector_to_parts([float(x) for x in v], n, functional)
    values, _ = eig_sym(real_embedding(re, im), tol)
    return float(values[0])


def trace_coordinates(re: Any, im: Any) -> np.ndarray:
    """(tr(B_k U))_k over the coordinate basis B_k: (U_ii, 2 Re U_ij, -2 Im U_ij)."""
    re = np.asarray(re)
    im = np.asarray(im)
    n = re.shape[0]
    exact = re.dtype == object
    two = Fraction(2) if exact else 2.0
    out = np.empty(n * n, dtype=object if exact else float)
    for i in range(n):
        out[i] = re[i, i]
    k = n
    for i, j in off_diagonal_pairs(n):
        out[k] = two * re[i, j]
        out[k + 1] = -two * im[i, j]
        k += 2
    return out


def rank_one_projector(psi: np.ndarray) -> np.ndarray:
    """Coordinates of |psi><psi| for a complex vector psi."""
    psi = np.asarray(psi, dtype=complex)
    return complex_to_vector(np.outer(psi, psi.conj()))
