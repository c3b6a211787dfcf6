"""Dense linear algebra: exact (Fraction object arrays) and floating (float64).

Exact routines never round. Floating routines are limited to the symmetric
eigenproblem (cyclic Jacobi) and the singular values derived from it.
"""
import logging
import math
from fractions import Fraction
from typing import Any, List, Optional, Tuple

import numpy as np

from utils.config import DEFAULT_TOL
from utils.exceptions import DimensionMismatchError, NotSymmetricError, NumericalError, SingularMatrixError

from .rational import parse_rational

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def as_exact(m: Any) -> np.ndarray:
    """Coerce a vector or matrix into an object array of Fractions."""
    arr = np.array(m, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = parse_rational(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        out[i, i] = ONE
    return out


def zeros(rows: int, cols: Optional[int] = None) -> np.ndarray:
    if cols is None:
        return np.full(rows, ZERO, dtype=object)
    return np.full((rows, cols), ZERO, dtype=object)


def matmul(a: Any, b: Any) -> np.ndarray:
    """Exact matrix (or matrix-vector) product with shape checking."""
    a = as_exact(a)
    b = as_exact(b)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(a.shape[-1], b.shape[0], "matmul inner dimension")
    if a.size == 0 or b.size == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return np.full(shape, ZERO, dtype=object)
    return a.dot(b)


def dot(u: Any, v: Any) -> Fraction:
    u = as_exact(u)
    v = as_exact(v)
    if u.shape != v.shape:
        raise DimensionMismatchError(u.shape, v.shape, "dot product")
    return sum((x * y for x, y in zip(u.flat, v.flat)), ZERO)


def rref(m: Any) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and pivot columns."""
    r = as_exact(m).copy()
    if r.ndim != 2:
        raise DimensionMismatchError("2-D matrix", r.shape, "rref")
    rows, cols = r.shape
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = next((i for i in range(row, rows) if r[i, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        lead = r[row, col]
        r[row] = r[row] / lead
        for i in range(rows):
            if i != row and r[i, col] != 0:
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: Any) -> int:
    arr = as_exact(m)
    if arr.size == 0:
        return 0
    return len(rref(arr)[1])


def nullspace(m: Any) -> List[np.ndarray]:
    """Basis of the right kernel, one exact vector per free column."""
    arr = as_exact(m)
    cols = arr.shape[1]
    if arr.shape[0] == 0:
        return [identity(cols)[i] for i in range(cols)]
    r, pivots = rref(arr)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return basis


def det(m: Any) -> Fraction:
    a = as_exact(m).copy()
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("square matrix", a.shape, "det")
    n = a.shape[0]
    result = ONE
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i, col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            result = -result
        result *= a[col, col]
        for i in range(col + 1, n):
            if a[i, col] != 0:
                a[i] = a[i] - (a[i, col] / a[col, col]) * a[col]
    return result


def inverse(m: Any) -> np.ndarray:
    a = as_exact(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("square matrix", a.shape, "inverse")
    n = a.shape[0]
    augmented = np.concatenate([a, identity(n)], axis=1)
    r, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError(f"Matrix of size {n} is singular")
    return r[:, n:]


def solve(a: Any, b: Any) -> np.ndarray:
    """Unique exact solution of a x = b for square invertible a."""
    return matmul(inverse(a), as_exact(b))


def is_invertible(m: Any) -> bool:
    arr = as_exact(m)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and rank(arr) == arr.shape[0]


def primitive_integer_vector(v: Any) -> np.ndarray:
    """Positive rescaling of a rational vector to coprime integers."""
    v = as_exact(v)
    denominators = [q.denominator for q in v if q != 0]
    if not denominators:
        return v.copy()
    lcm = 1
    for d in denominators:
        lcm = lcm * d // math.gcd(lcm, d)
    ints = [int(q * lcm) for q in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return np.array([Fraction(x // g) for x in ints], dtype=object)


# ---------------------------------------------------------------------------
# Floating spectral routines
# ---------------------------------------------------------------------------

def _as_float_matrix(m: Any) -> np.ndarray:
    arr = np.asarray(m)
    if arr.dtype == object:
        arr = np.array([[float(v) for v in row] for row in arr], dtype=float).reshape(arr.shape)
    return np.array(arr, dtype=float)


def eig_sym(m: Any, tol: float = DEFAULT_TOL, max_sweeps: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, orthogonal matrix with eigenvectors as columns).
    Sweeps stop once the off-diagonal Frobenius mass drops below tol * max(1, ||m||_F).
    """
    a = _as_float_matrix(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("square matrix", a.shape, "eig_sym")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))

    scale = max(1.0, float(np.sqrt(np.sum(a * a))))
    asymmetry = float(np.max(np.abs(a - a.T)))
    if asymmetry > tol * scale:
        raise NotSymmetricError(asymmetry, tol)
    a = (a + a.T) / 2.0
    v = np.eye(n)

    for sweep in range(max_sweeps + 1):
        off = math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2))))
        if off < tol * scale:
            break
        if sweep == max_sweeps:
            raise NumericalError("Jacobi eig_sym", max_sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    logger.debug(f"eig_sym converged after {sweep} sweeps (n={n})")
    values = np.diag(a).copy()
    order = np.argsort(values, kind='stable')
    return values[order], v[:, order]


def min_eigenvalue(m: Any, tol: float = DEFAULT_TOL) -> float:
    values, _ = eig_sym(m, tol)
    return float(values[0]) if values.size else 0.0


def svd_decompose(m: Any, tol: float = DEFAULT_TOL) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD m = U diag(s) Vt with s descending, built on eig_sym of the smaller Gram matrix."""
    a = _as_float_matrix(m)
    if a.ndim != 2:
        raise DimensionMismatchError("2-D matrix", a.shape, "svd")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd requires finite entries")
    rows, cols = a.shape
    if rows < cols:
        u, s, vt = svd_decompose(a.T, tol)
        return vt.T, s, u.T

    k = cols
    if k == 0:
        return np.zeros((rows, 0)), np.zeros(0), np.zeros((0, 0))
    _, vecs = eig_sym(a.T @ a, tol)
    # sigma_i = ||a v_i|| stays accurate where the Gram eigenvalue has lost digits
    images = a @ vecs
    sigmas = np.sqrt(np.sum(images * images, axis=0))
    order = np.argsort(-sigmas, kind='stable')
    sigmas = sigmas[order]
    vecs = vecs[:, order]
    images = images[:, order]

    scale = max(1.0, float(sigmas[0]))
    u = np.zeros((rows, k))
    for i in range(k):
        if sigmas[i] > tol * scale:
            u[:, i] = images[:, i] / sigmas[i]
        else:
            u[:, i] = _orthogonal_complement_vector(u[:, :i], rows)
    return u, sigmas, vecs.T


def _orthogonal_complement_vector(basis: np.ndarray, dim: int) -> np.ndarray:
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = 1.0
        if basis.size:
            e = e - basis @ (basis.T @ e)
        norm = float(np.linalg.norm(e))
        if norm > 1e-6:
            return e / norm
    return np.zeros(dim)


def svd(m: Any, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Singular values in descending order."""
    return svd_decompose(m, tol)[1]


def operator_norm(m: Any, tol: float = DEFAULT_TOL) -> float:
    s = svd(m, tol)
    return float(s[0]) if s.size else 0.0


def trace_norm(m: Any, tol: float = DEFAULT_TOL) -> float:
    return float(np.sum(svd(m, tol)))
