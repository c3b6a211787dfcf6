"""Queries on cones: membership, duality, classicality, extreme rays, facets, linear images."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from exactnum.linalg import as_exact, det, eig_sym, inverse, matmul, primitive_integer_vector, rank
from exactnum.lp import conic_combination
from exactnum.rational import format_rational, is_exact, parse_rational
from utils.config import DEFAULT_MAX_DD_DIM, DEFAULT_MAX_GENERATORS, DEFAULT_TOL
from utils.exceptions import DimensionMismatchError, SingularMatrixError, UnsupportedConeError

from .double_description import dual_extreme_rays
from .hermitian import real_embedding, trace_coordinates, vector_to_parts
from .models import (ClassicalCone, Cone, LorentzCone, PolygonCone, PolyhedralCone, PsdCone,
                     as_polyhedral, is_polyhedral)
from .polygons import apply_affine, orient_ccw

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


class Membership(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class MembershipResult:
    """Verdict plus witness: a decomposition over generators, or a separating functional."""
    status: Membership
    decomposition: Optional[Tuple[Any, ...]] = None
    separating: Optional[Tuple[Any, ...]] = None
    value: Optional[Any] = None

    @property
    def is_member(self) -> bool:
        return self.status != Membership.OUTSIDE

    def to_dict(self) -> dict:
        def fmt(vec):
            if vec is None:
                return None
            return [format_rational(v) if isinstance(v, Fraction) else float(v) for v in vec]
        value = self.value
        if isinstance(value, Fraction):
            value = format_rational(value)
        return {
            "status": self.status.value,
            "decomposition": fmt(self.decomposition),
            "separating": fmt(self.separating),
            "value": value,
        }


@dataclass(frozen=True)
class Facet:
    functional: Vector
    ray_indices: Tuple[int, ...]
    rays: Tuple[Vector, ...] = field(repr=False)


@dataclass(frozen=True)
class ClassicalityResult:
    classical: bool
    basis: Optional[Tuple[Vector, ...]] = None
    reason: str = ""


def _check_length(cone: Cone, x: Sequence) -> None:
    if len(x) != cone.dim:
        raise DimensionMismatchError(cone.dim, len(x), f"vector for {cone.kind.value} cone")


def _dot(a: Sequence, b: Sequence):
    return sum((p * q for p, q in zip(a, b)), Fraction(0) if is_exact(a) and is_exact(b) else 0.0)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def membership(cone: Cone, x: Sequence, tol: float = DEFAULT_TOL) -> MembershipResult:
    """Decide x in cone, returning a certificate for the verdict."""
    _check_length(cone, x)
    if isinstance(cone, ClassicalCone):
        return _classical_membership(x)
    if is_polyhedral(cone):
        return _polyhedral_membership(as_polyhedral(cone), x)
    if isinstance(cone, LorentzCone):
        return _lorentz_membership(cone, x, tol)
    if isinstance(cone, PsdCone):
        return _psd_membership(cone, x, tol)
    raise UnsupportedConeError(str(getattr(cone, 'kind', type(cone).__name__)), "membership")


def _classical_membership(x: Sequence) -> MembershipResult:
    x = tuple(parse_rational(v) for v in x)
    for i, v in enumerate(x):
        if v < 0:
            sep = tuple(Fraction(1) if j == i else Fraction(0) for j in range(len(x)))
            return MembershipResult(Membership.OUTSIDE, separating=sep, value=v)
    status = Membership.BOUNDARY if any(v == 0 for v in x) else Membership.INSIDE
    return MembershipResult(status, decomposition=x)


def _polyhedral_membership(cone: PolyhedralCone, x: Sequence) -> MembershipResult:
    target = tuple(parse_rational(v) for v in x)
    outcome = conic_combination(cone.generators, target)
    if outcome.is_infeasible:
        separating = tuple(-v for v in outcome.farkas)
        return MembershipResult(Membership.OUTSIDE, separating=separating, value=_dot(separating, target))
    tight = [f for f in facet_functionals(cone) if _dot(f, target) == 0]
    status = Membership.BOUNDARY if tight else Membership.INSIDE
    return MembershipResult(status, decomposition=outcome.x, separating=tight[0] if tight else None)


def _lorentz_membership(cone: LorentzCone, x: Sequence, tol: float) -> MembershipResult:
    exact = is_exact(x) and isinstance(cone.r, Fraction)
    *head, t = x
    if exact:
        head = [parse_rational(v) for v in head]
        t = parse_rational(t)
        slack = cone.r * cone.r * t * t - sum((v * v for v in head), Fraction(0))
        if t >= 0 and slack > 0:
            return MembershipResult(Membership.INSIDE, value=slack)
        if t >= 0 and slack == 0:
            return MembershipResult(Membership.BOUNDARY, value=slack)
        return MembershipResult(Membership.OUTSIDE, separating=_lorentz_separator(head, float(cone.r)),
                                value=slack if t >= 0 else t)
    head = [float(v) for v in head]
    t = float(t)
    r = float(cone.r)
    norm = math.sqrt(sum(v * v for v in head))
    slack = r * t - norm
    scale = tol * (1.0 + math.sqrt(norm * norm + t * t))
    if slack < -scale:
        return MembershipResult(Membership.OUTSIDE, separating=_lorentz_separator(head, r), value=slack)
    if slack <= scale:
        return MembershipResult(Membership.BOUNDARY, value=slack)
    return MembershipResult(Membership.INSIDE, value=slack)


def _lorentz_separator(head: Sequence, r: float) -> Tuple[float, ...]:
    """(-x/||x||, r), a point of the dual cone L_n(1/r) negative on x when x is outside."""
    norm = math.sqrt(sum(float(v) ** 2 for v in head))
    if norm == 0.0:
        return tuple([0.0] * len(head)) + (1.0,)
    return tuple(-float(v) / norm for v in head) + (r,)


def _psd_membership(cone: PsdCone, x: Sequence, tol: float) -> MembershipResult:
    re, im = vector_to_parts([float(v) for v in x], cone.n)
    values, vectors = eig_sym(real_embedding(re, im), tol)
    lowest = float(values[0])
    scale = tol * (1.0 + math.sqrt(sum(float(v) ** 2 for v in x)))
    if lowest < -scale:
        n = cone.n
        psi = vectors[:n, 0] + 1j * vectors[n:, 0]
        projector = np.outer(psi, psi.conj())
        separating = tuple(float(v) for v in trace_coordinates(projector.real, projector.imag))
        return MembershipResult(Membership.OUTSIDE, separating=separating, value=lowest)
    status = Membership.BOUNDARY if lowest <= scale else Membership.INSIDE
    return MembershipResult(status, value=lowest)


# ---------------------------------------------------------------------------
# Duality and facial structure
# ---------------------------------------------------------------------------

def facet_functionals(
    cone: Cone,
    max_dim: int = DEFAULT_MAX_DD_DIM,
    max_generators: int = DEFAULT_MAX_GENERATORS
) -> List[Vector]:
    """Extreme rays of the dual cone (facet normals), primitive integer vectors in sorted order."""
    if isinstance(cone, PolyhedralCone) and cone.facet_hint is not None:
        return list(cone.facet_hint)
    poly = as_polyhedral(cone)
    return dual_extreme_rays(poly.generators, poly.dim, max_dim=max_dim, max_generators=max_generators)


def dual_cone(cone: Cone, max_dim: int = DEFAULT_MAX_DD_DIM) -> Cone:
    """Generator representation of the dual cone (Lorentz by closed form)."""
    if isinstance(cone, ClassicalCone):
        return ClassicalCone(n=cone.n)
    if isinstance(cone, LorentzCone):
        r = cone.r
        return LorentzCone(n=cone.n, r=(1 / r) if isinstance(r, Fraction) else 1.0 / r)
    if is_polyhedral(cone):
        poly = as_polyhedral(cone)
        rays = facet_functionals(poly, max_dim=max_dim)
        extreme = tuple(tuple(primitive_integer_vector(g)) for g in extreme_rays(poly))
        return PolyhedralCone(dim=poly.dim, generators=tuple(rays), facet_hint=extreme, validate=False)
    raise UnsupportedConeError(cone.kind.value, "dual_cone")


def strictly_positive_functional(cone: Cone) -> Vector:
    """Sum of the dual extreme rays; strictly positive on every nonzero element of the cone."""
    rays = facet_functionals(cone)
    dim = cone.dim
    return tuple(sum((r[i] for r in rays), Fraction(0)) for i in range(dim))


def extreme_rays(cone: Cone) -> List[Vector]:
    """Irredundant generator list; each survivor fails an LP test for membership in the others."""
    if isinstance(cone, (ClassicalCone, PolygonCone)):
        return list(cone.generators)
    if not isinstance(cone, PolyhedralCone):
        raise UnsupportedConeError(cone.kind.value, "extreme_rays")
    seen = set()
    candidates: List[Vector] = []
    originals: List[Vector] = []
    for g in cone.generators:
        key = tuple(primitive_integer_vector(g))
        if key in seen:
            continue
        seen.add(key)
        candidates.append(key)
        originals.append(g)
    kept = list(range(len(candidates)))
    for i in range(len(candidates)):
        others = [candidates[k] for k in kept if k != i]
        if not others:
            continue
        if conic_combination(others, candidates[i]).is_optimal:
            kept.remove(i)
            logger.debug(f"generator {i} is redundant")
    return [originals[k] for k in kept]


def facets(cone: Cone) -> List[Facet]:
    """Facet functionals with the extreme rays each one annihilates."""
    rays = extreme_rays(cone)
    out = []
    for f in facet_functionals(cone):
        indices = tuple(k for k, r in enumerate(rays) if _dot(f, r) == 0)
        members = tuple(rays[k] for k in indices)
        if rank(np.array(members, dtype=object)) != cone.dim - 1:
            logger.warning(f"facet {f} spans less than a hyperplane")
        out.append(Facet(functional=f, ray_indices=indices, rays=members))
    return out


def is_classical(cone: Cone) -> ClassicalityResult:
    """Classical iff the extreme rays form a basis."""
    if isinstance(cone, ClassicalCone):
        return ClassicalityResult(True, basis=cone.generators, reason="orthant")
    if isinstance(cone, LorentzCone):
        if cone.n == 1:
            r = cone.r
            basis = ((-r, Fraction(1)), (r, Fraction(1))) if isinstance(r, Fraction) else ((-r, 1.0), (r, 1.0))
            return ClassicalityResult(True, basis=basis, reason="L_1 is two-dimensional")
        return ClassicalityResult(False, reason="Lorentz cone with n >= 2 has a round base")
    if isinstance(cone, PsdCone):
        if cone.n == 1:
            return ClassicalityResult(True, basis=((Fraction(1),),), reason="PSD_1 is a half-line")
        return ClassicalityResult(False, reason="PSD cone with n >= 2 has infinitely many extreme rays")
    rays = extreme_rays(cone)
    if len(rays) == cone.dim and rank(np.array(rays, dtype=object)) == cone.dim:
        return ClassicalityResult(True, basis=tuple(rays), reason="extreme rays form a basis")
    return ClassicalityResult(False, reason=f"{len(rays)} extreme rays in dimension {cone.dim}")


# ---------------------------------------------------------------------------
# Linear images
# ---------------------------------------------------------------------------

def apply_linear(cone: Cone, m: Any) -> Cone:
    """Image of a cone under an invertible exact matrix."""
    mat = as_exact(m)
    if mat.shape != (cone.dim, cone.dim):
        raise DimensionMismatchError((cone.dim, cone.dim), mat.shape, "apply_linear")
    if det(mat) == 0:
        raise SingularMatrixError("apply_linear needs an invertible map")
    is_identity = all(mat[i, j] == (1 if i == j else 0) for i in range(cone.dim) for j in range(cone.dim))
    if isinstance(cone, PolygonCone):
        last = mat[2]
        if last[0] == 0 and last[1] == 0 and last[2] == 1:
            linear = [[mat[0, 0], mat[0, 1]], [mat[1, 0], mat[1, 1]]]
            shift = [mat[0, 2], mat[1, 2]]
            return PolygonCone(vertices=tuple(orient_ccw(apply_affine(cone.vertices, linear, shift))))
    if is_polyhedral(cone):
        poly = as_polyhedral(cone)
        images = tuple(tuple(matmul(mat, np.array(g, dtype=object))) for g in poly.generators)
        hint = None
        if poly.facet_hint is not None:
            inv_t = inverse(mat).T
            hint = tuple(tuple(primitive_integer_vector(matmul(inv_t, np.array(f, dtype=object))))
                         for f in poly.facet_hint)
        return PolyhedralCone(dim=poly.dim, generators=images, facet_hint=hint, validate=False)
    if is_identity:
        return cone
    raise UnsupportedConeError(cone.kind.value, "apply_linear with a non-identity map")


@dataclass(frozen=True)
class PolygonSection:
    """A 3-D polyhedral cone identified with the cone over a polygon.

    `to_polygon` maps the cone onto `polygon_cone`; `from_polygon` is its inverse.
    """
    polygon_cone: PolygonCone
    to_polygon: np.ndarray = field(repr=False)
    from_polygon: np.ndarray = field(repr=False)
    functional: Vector = ()


def polygon_section(cone: Cone) -> PolygonSection:
    """Section a 3-D polyhedral cone by its strictly positive functional phi = sum of dual rays.

    The linear map keeps two coordinates and replaces the third by phi, so each
    generator g lands on phi(g) times a lifted polygon vertex.
    """
    if cone.dim != 3 or not is_polyhedral(cone):
        raise UnsupportedConeError(getattr(cone.kind, 'value', str(cone.kind)), "polygon_section (needs a 3-D polyhedral cone)")
    phi = strictly_positive_functional(cone)
    pivot = max(i for i in range(3) if phi[i] != 0)
    kept = [i for i in range(3) if i != pivot]
    rows = []
    for i in kept:
        rows.append([Fraction(1) if j == i else Fraction(0) for j in range(3)])
    rows.append(list(phi))
    to_polygon = as_exact(rows)
    vertices = []
    for g in extreme_rays(cone):
        image = matmul(to_polygon, np.array(g, dtype=object))
        vertices.append((image[0] / image[2], image[1] / image[2]))
    polygon = PolygonCone(vertices=tuple(vertices))
    return PolygonSection(
        polygon_cone=polygon,
        to_polygon=to_polygon,
        from_polygon=inverse(to_polygon),
        functional=phi
    )
