"""Gauge, injective and projective norms, and the states omega(z) = gamma1 (x) gamma2 + z."""
import logging
import math
import random
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np

from exactnum.linalg import operator_norm, trace_norm
from exactnum.lp import LpProblem, lp_solve
from exactnum.rational import is_exact, parse_rational
from tensorcone.models import TensorElement
from tensorcone.products import bilinear_value
from utils.config import DEFAULT_SEED, DEFAULT_TOL
from utils.exceptions import DimensionMismatchError, NormError

from .models import NormedSpace, ProjectiveNormResult, SymmetricGpt

logger = logging.getLogger(__name__)


def _euclidean_length(values: Sequence[Any]) -> Any:
    """Exact when the squared length is a rational square, float otherwise."""
    if is_exact(values):
        sq = sum((parse_rational(v) ** 2 for v in values), Fraction(0))
        num, den = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
        if num * num == sq.numerator and den * den == sq.denominator:
            return Fraction(num, den)
        return math.sqrt(sq)
    return float(np.linalg.norm(np.array(values, dtype=float)))


def _pair_kind(x: NormedSpace, y: NormedSpace) -> str:
    if x.is_polytope and y.is_polytope:
        return "polytope"
    if not x.is_polytope and not y.is_polytope:
        return "euclidean"
    raise NormError("mixed polytope / Euclidean ball pairs are not supported")


def _check_tensor(x: NormedSpace, y: NormedSpace, z: TensorElement) -> None:
    if z.shape != (x.dim, y.dim):
        raise DimensionMismatchError((x.dim, y.dim), z.shape, "tensor for normed space pair")


def space_norm(space: NormedSpace, x: Sequence[Any]) -> Any:
    """||x|| as the gauge of the unit ball: min sum(lam) with x = sum lam_k v_k, lam >= 0."""
    if len(x) != space.dim:
        raise DimensionMismatchError(space.dim, len(x), "vector in normed space")
    if not space.is_polytope:
        return _euclidean_length(x)
    if not is_exact(x):
        raise NormError("polytope gauges need exact vectors")
    verts = space.vertices
    a_eq = [[v[i] for v in verts] for i in range(space.dim)]
    outcome = lp_solve(LpProblem.from_arrays([1] * len(verts), a_eq, list(x)))
    if not outcome.is_optimal:
        raise NormError(f"gauge LP is {outcome.status.value}")
    return outcome.objective_value


def dual_norm(space: NormedSpace, f: Sequence[Any]) -> Any:
    """||f||_* = max over the unit ball of f(x), attained at a vertex."""
    if len(f) != space.dim:
        raise DimensionMismatchError(space.dim, len(f), "functional on normed space")
    if not space.is_polytope:
        return _euclidean_length(f)
    f = [parse_rational(v) for v in f]
    return max(sum((a * b for a, b in zip(f, v)), Fraction(0)) for v in space.vertices)


def gauge_norm(s: SymmetricGpt, x: Sequence[Any]) -> Any:
    """inf{t > 0 : gamma + x / t in C} for x in ker(u)."""
    if len(x) != s.gpt.dim:
        raise DimensionMismatchError(s.gpt.dim, len(x), "vector in GPT space")
    if s.gpt.unit_value(x) != 0:
        raise NormError("vector is not in the kernel of the order unit")
    return space_norm(s.space, s.project(x))


def injective_norm(x: NormedSpace, y: NormedSpace, z: TensorElement) -> Any:
    """sup (f (x) g)(z) over the dual unit balls."""
    _check_tensor(x, y, z)
    if _pair_kind(x, y) == "euclidean":
        return operator_norm(np.array(z.matrix, dtype=float))
    if not z.exact:
        raise NormError("polytope norms need an exact tensor")
    return max(bilinear_value(f, z, g) for f in x.dual_vertices() for g in y.dual_vertices())


def projective_norm_lp(x: NormedSpace, y: NormedSpace, z: TensorElement) -> ProjectiveNormResult:
    """Gauge of z over conv{v (x) w : v, w vertices of the unit balls}, with its exact dual bound.

    The LP dual is a functional W with v^T W w <= 1 on every vertex pair, i.e. of injective
    norm at most one on the dual spaces, and <W, z> equal to the optimum.
    """
    _check_tensor(x, y, z)
    if _pair_kind(x, y) == "euclidean":
        value = trace_norm(np.array(z.matrix, dtype=float))
        return ProjectiveNormResult(value=value, dual_value=value)
    if not z.exact:
        raise NormError("polytope norms need an exact tensor")
    pairs: List[Tuple[int, int]] = [(i, j) for i in range(len(x.vertices)) for j in range(len(y.vertices))]
    columns = [TensorElement.product(x.vertices[i], y.vertices[j]).vec() for i, j in pairs]
    target = z.vec()
    a_eq = [[col[k] for col in columns] for k in range(len(target))]
    outcome = lp_solve(LpProblem.from_arrays([1] * len(pairs), a_eq, target))
    if not outcome.is_optimal:
        raise NormError(f"projective norm LP is {outcome.status.value}")
    dual = TensorElement.from_vec(outcome.y, z.shape)
    decomposition = tuple((pairs[k], c) for k, c in enumerate(outcome.x) if c != 0)
    logger.debug(f"projective norm {outcome.objective_value} over {len(decomposition)} vertex products")
    return ProjectiveNormResult(value=outcome.objective_value, decomposition=decomposition,
                                dual_functional=dual.matrix, dual_value=dual.pair(z))


def projective_norm(x: NormedSpace, y: NormedSpace, z: TensorElement) -> Any:
    return projective_norm_lp(x, y, z).value


def omega_state(s1: SymmetricGpt, s2: SymmetricGpt, z: TensorElement) -> TensorElement:
    """gamma1 (x) gamma2 + z, a state of the maximal product whenever eps(z) <= 1."""
    eps = injective_norm(s1.space, s2.space, z)
    if eps > (1 if isinstance(eps, Fraction) else 1 + DEFAULT_TOL):
        raise NormError(f"injective norm {eps} exceeds 1")
    exact = z.exact
    zero = Fraction(0) if exact else 0.0
    m = np.full((s1.gpt.dim, s2.gpt.dim), zero, dtype=object if exact else float)
    m[:s1.n, :s2.n] = z.matrix
    m[s1.n, s2.n] = Fraction(1) if exact else 1.0
    return TensorElement(m)


def projected_tensor(s1: SymmetricGpt, s2: SymmetricGpt, omega: TensorElement) -> TensorElement:
    """(Pi1 (x) Pi2) omega, in the coordinates of X1 (x) X2."""
    if omega.shape != (s1.gpt.dim, s2.gpt.dim):
        raise DimensionMismatchError((s1.gpt.dim, s2.gpt.dim), omega.shape, "state for GPT pair")
    return TensorElement(omega.matrix[:s1.n, :s2.n])


def unit_value(s1: SymmetricGpt, s2: SymmetricGpt, omega: TensorElement) -> Any:
    """(u1 (x) u2)(omega)."""
    return bilinear_value(s1.gpt.unit, omega, s2.gpt.unit)


def _norm_samples(space: NormedSpace, samples: int, seed: int) -> List[Tuple[Fraction, ...]]:
    """Ball vertices, dual vertices and seeded rationals in the coordinates of X."""
    rng = random.Random(seed)
    out = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(space.dim)) for _ in range(samples)]
    if space.is_polytope:
        out = list(space.vertices) + list(space.dual_vertices()) + out
    return out


def dual_symmetric_gpt(s: SymmetricGpt, samples: int = 16, seed: int = DEFAULT_SEED) -> SymmetricGpt:
    """(V*, C*, gamma) recentred at u: the cone over the dual ball, or the same Lorentz cone.

    The gauge norm of the result must equal the dual norm of X on ker(gamma); this is
    checked on sampled functionals and a mismatch raises NormError.
    """
    dual = SymmetricGpt.from_space(s.space.dual())
    if s.space.is_polytope:
        for g in dual.gpt.cone.generators:
            for h in s.gpt.cone.generators:
                if sum((a * b for a, b in zip(g, h)), Fraction(0)) < 0:
                    raise NormError("dual ball does not lift into the dual cone")
    if dual.gpt.unit != s.centre or dual.centre != s.gpt.unit:
        raise NormError("dual GPT is not centred at the order unit")
    for f in _norm_samples(s.space, samples, seed):
        gauge = gauge_norm(dual, tuple(f) + (Fraction(0),))
        expected = dual_norm(s.space, f)
        if gauge != expected:
            raise NormError(f"dual gauge norm {gauge} differs from the dual norm {expected} at {f}")
    return dual
