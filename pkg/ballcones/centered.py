"""Centered tensors over Lorentz cones and their exact membership criteria.

A centered tensor z = sum_ij B_ij e_i (x) e_j + t e_{n+1} (x) e_{n+1} has no mixed
entries. Against L_n (x) L_n(r) it lies in the maximal product iff the operator norm
of B is at most t, and in the minimal product iff the trace norm of B is at most r t.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Tuple

import numpy as np

from cones.models import LorentzCone
from cones.operations import Membership, membership
from exactnum.linalg import as_exact, operator_norm, svd_decompose, trace_norm
from exactnum.rational import is_exact, parse_rational
from tensorcone.models import TensorElement
from utils.config import DEFAULT_TOL
from utils.exceptions import DimensionMismatchError, ParameterRangeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CenteredTensor:
    block: np.ndarray
    apex: Any

    def __post_init__(self):
        block = as_exact(self.block) if is_exact(self.block) else np.array(self.block, dtype=float)
        if block.ndim != 2 or block.shape[0] != block.shape[1]:
            raise DimensionMismatchError("square block", block.shape, "CenteredTensor")
        apex = parse_rational(self.apex) if is_exact([self.apex]) else float(self.apex)
        if apex < 0:
            raise ParameterRangeError("t", apex, "[0, inf)")
        object.__setattr__(self, 'block', block)
        object.__setattr__(self, 'apex', apex)

    @property
    def n(self) -> int:
        return self.block.shape[0]

    def to_tensor(self) -> TensorElement:
        n = self.n
        exact = self.block.dtype == object and isinstance(self.apex, Fraction)
        zero = Fraction(0) if exact else 0.0
        m = np.full((n + 1, n + 1), zero, dtype=object if exact else float)
        m[:n, :n] = self.block
        m[n, n] = self.apex
        return TensorElement(m)

    @classmethod
    def from_tensor(cls, z: TensorElement) -> 'CenteredTensor':
        m = z.matrix
        n = m.shape[0] - 1
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatchError("square tensor", m.shape, "CenteredTensor")
        mixed = [m[i, n] for i in range(n)] + [m[n, j] for j in range(n)]
        if any(v != 0 for v in mixed):
            raise ParameterRangeError("mixed entries", "nonzero", "{0}")
        return cls(block=m[:n, :n], apex=m[n, n])

    @classmethod
    def identity(cls, n: int, t: Any = 1) -> 'CenteredTensor':
        """sum_i e_i (x) e_i over the first n coordinates plus t e_{n+1} (x) e_{n+1}."""
        block = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
        return cls(block=block, apex=parse_rational(t))


@dataclass(frozen=True)
class CenteredDecomposition:
    """z = sum_k c_k x_k (x) y_k with x_k in L_n(1) and y_k in L_n(r)."""
    terms: Tuple[Tuple[float, Tuple[float, ...], Tuple[float, ...]], ...]
    residual: float


def _check_radius(r: Any) -> float:
    r = float(r)
    if r <= 0:
        raise ParameterRangeError("r", r, "(0, inf)")
    return r


def lorentz_max_membership_centered(z: CenteredTensor, tol: float = DEFAULT_TOL) -> bool:
    """z in L_n (*max*) L_n iff sigma_1(B) <= t."""
    sigma = operator_norm(z.block, tol) if z.n else 0.0
    return sigma <= float(z.apex) + tol


def lorentz_min_membership_centered(z: CenteredTensor, r: Any, tol: float = DEFAULT_TOL) -> bool:
    """z in L_n (*min*) L_n(r) iff ||B||_1 <= r t."""
    r = _check_radius(r)
    norm = trace_norm(z.block, tol) if z.n else 0.0
    return norm <= r * float(z.apex) + tol


def min_decomposition_centered(z: CenteredTensor, r: Any, tol: float = DEFAULT_TOL) -> CenteredDecomposition:
    """Rank-one boundary decomposition from the SVD of B, re-verified numerically.

    Each singular triple contributes (s_k / 2r) [(u, 1) (x) (r v, 1) + (-u, 1) (x) (-r v, 1)];
    the leftover apex mass t - ||B||_1 / r goes on e_{n+1} (x) e_{n+1}.
    """
    r = _check_radius(r)
    if not lorentz_min_membership_centered(z, r, tol):
        raise ParameterRangeError("trace norm", trace_norm(z.block, tol), f"[0, r t] with r = {r}")
    n = z.n
    u, s, vt = svd_decompose(z.block, tol)
    terms: List[Tuple[float, Tuple[float, ...], Tuple[float, ...]]] = []
    used = 0.0
    for k in range(len(s)):
        if s[k] <= tol:
            continue
        coef = float(s[k]) / (2.0 * r)
        for sign in (1.0, -1.0):
            x = tuple(float(v) for v in sign * u[:, k]) + (1.0,)
            y = tuple(float(v) for v in sign * r * vt[k, :]) + (1.0,)
            terms.append((coef, x, y))
        used += float(s[k]) / r
    leftover = float(z.apex) - used
    apex_vector = tuple([0.0] * n) + (1.0,)
    if leftover > 0:
        terms.append((leftover, apex_vector, apex_vector))

    total = np.zeros((n + 1, n + 1))
    for coef, x, y in terms:
        total += coef * np.outer(x, y)
    target = np.array(z.to_tensor().matrix, dtype=float)
    residual = float(np.max(np.abs(total - target))) if total.size else 0.0

    left, right = LorentzCone(n=n), LorentzCone(n=n, r=r)
    for coef, x, y in terms:
        if coef < -tol or membership(left, x, tol).status == Membership.OUTSIDE \
                or membership(right, y, tol).status == Membership.OUTSIDE:
            raise ParameterRangeError("decomposition term", coef, "Lorentz boundary products")
    scale = max(1.0, float(np.max(np.abs(target)))) if target.size else 1.0
    if residual > 1e3 * tol * scale:
        logger.warning(f"centered decomposition residual {residual:.3e}")
    return CenteredDecomposition(terms=tuple(terms), residual=residual)
