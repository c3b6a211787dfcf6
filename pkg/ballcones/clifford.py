"""Anticommuting Hermitian families from the Jordan-Wigner construction.

Complex integer matrices are carried as (re, im) pairs of integer arrays so every
invariant is checked in exact integer arithmetic.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Tuple

import numpy as np

from cones.hermitian import parts_to_vector, real_embedding, trace_coordinates
from exactnum.linalg import as_exact
from utils.exceptions import ParameterRangeError

logger = logging.getLogger(__name__)

ComplexInt = Tuple[np.ndarray, np.ndarray]

I2: ComplexInt = (np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64))
PAULI_X: ComplexInt = (np.array([[0, 1], [1, 0]], dtype=np.int64), np.zeros((2, 2), dtype=np.int64))
PAULI_Y: ComplexInt = (np.zeros((2, 2), dtype=np.int64), np.array([[0, -1], [1, 0]], dtype=np.int64))
PAULI_Z: ComplexInt = (np.array([[1, 0], [0, -1]], dtype=np.int64), np.zeros((2, 2), dtype=np.int64))

MAX_CLIFFORD_N = 4


def ckron(a: ComplexInt, b: ComplexInt) -> ComplexInt:
    return (np.kron(a[0], b[0]) - np.kron(a[1], b[1]), np.kron(a[0], b[1]) + np.kron(a[1], b[0]))


def cmul(a: ComplexInt, b: ComplexInt) -> ComplexInt:
    return (a[0] @ b[0] - a[1] @ b[1], a[0] @ b[1] + a[1] @ b[0])


def cadd(a: ComplexInt, b: ComplexInt) -> ComplexInt:
    return (a[0] + b[0], a[1] + b[1])


def ctrace(a: ComplexInt) -> Tuple[int, int]:
    return int(np.trace(a[0])), int(np.trace(a[1]))


def cidentity(size: int) -> ComplexInt:
    return (np.eye(size, dtype=np.int64), np.zeros((size, size), dtype=np.int64))


def hermitian_vector(a: ComplexInt) -> np.ndarray:
    """Exact Hermitian coordinates of an integer complex matrix."""
    return parts_to_vector(as_exact(a[0]), as_exact(a[1]))


def trace_functional(a: ComplexInt) -> np.ndarray:
    """Exact functional w with w . v(H) = tr(a H)."""
    return trace_coordinates(as_exact(a[0]), as_exact(a[1]))


@dataclass(frozen=True)
class CliffordFamily:
    n: int
    matrices: Tuple[ComplexInt, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return 2 ** self.n

    @property
    def real_embedded(self) -> List[np.ndarray]:
        return [real_embedding(re, im) for re, im in self.matrices]

    def phi(self) -> np.ndarray:
        """Unscaled A -> (tr(A U_1), ..., tr(A U_2n), tr A) in Hermitian coordinates."""
        rows = [trace_functional(u) for u in self.matrices]
        rows.append(trace_functional(cidentity(self.size)))
        return as_exact(rows)

    def psi(self) -> np.ndarray:
        """x -> sum_i x_i U_i + x_{2n+1} Id in Hermitian coordinates."""
        cols = [hermitian_vector(u) for u in self.matrices]
        cols.append(hermitian_vector(cidentity(self.size)))
        return as_exact(np.array(cols, dtype=object).T)


def _jordan_wigner(n: int) -> List[ComplexInt]:
    out = []
    for k in range(1, n + 1):
        for middle in (PAULI_X, PAULI_Y):
            factors = [PAULI_Z] * (k - 1) + [middle] + [I2] * (n - k)
            out.append(reduce(ckron, factors))
    return out


def check_clifford_relations(family: CliffordFamily) -> List[str]:
    """Anticommutation, zero trace and trace orthogonality, all in integers."""
    size = family.size
    ident = cidentity(size)
    zero = (np.zeros((size, size), dtype=np.int64),) * 2
    problems = []
    mats = family.matrices
    for i, u in enumerate(mats):
        if not (np.array_equal(u[0], u[0].T) and np.array_equal(u[1], -u[1].T)):
            problems.append(f"U{i + 1} is not Hermitian")
        if ctrace(u) != (0, 0):
            problems.append(f"U{i + 1} is not traceless")
        for j in range(i, len(mats)):
            anti = cadd(cmul(u, mats[j]), cmul(mats[j], u))
            expected = (2 * ident[0], ident[1]) if i == j else zero
            if not (np.array_equal(anti[0], expected[0]) and np.array_equal(anti[1], expected[1])):
                problems.append(f"U{i + 1} U{j + 1} + U{j + 1} U{i + 1} != {2 if i == j else 0} Id")
            if ctrace(cmul(u, mats[j])) != ((size if i == j else 0), 0):
                problems.append(f"tr(U{i + 1} U{j + 1}) != {size if i == j else 0}")
    return problems


def clifford_family(n: int) -> CliffordFamily:
    """2n pairwise anticommuting Hermitian involutions of size 2^n."""
    if not 1 <= n <= MAX_CLIFFORD_N:
        raise ParameterRangeError("n", n, f"[1, {MAX_CLIFFORD_N}]")
    family = CliffordFamily(n=n, matrices=tuple(_jordan_wigner(n)))
    problems = check_clifford_relations(family)
    if problems:
        raise ParameterRangeError("clifford relations", "; ".join(problems), "exact identities")
    logger.debug(f"clifford family n={n}: {2 * n} matrices of size {family.size}")
    return family
