"""GPT triples, symmetric GPTs and the normed spaces they induce.

A symmetric GPT is kept in the frame where the order unit and the centre are both
the last coordinate vector: V = X + R e_last, u = e_last^*, gamma = e_last, and the
state space is {(x, 1) : x in B_X}.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from cones.hermitian import min_eigenvalue_of_vector
from cones.library import DIAMOND, HEXAGON, SQUARE, cone_over_polytope
from cones.models import Cone, LorentzCone, PsdCone, Vector, as_polyhedral, cone_from_dict, is_polyhedral
from cones.operations import Membership, extreme_rays, facet_functionals, membership
from exactnum.linalg import rank
from exactnum.rational import format_rational, parse_rational
from utils.config import DEFAULT_TOL
from utils.exceptions import NormError, SchemaError, UnsupportedConeError

logger = logging.getLogger(__name__)

# Documentation-level bounds on the projective/injective ratio r(n, m); never used as computed truth.
REFERENCE_CONSTANTS: Dict[str, str] = {
    "ratio_lower_bound": "19/18 for all n, m >= 2",
    "ratio_growth": "c * min(n, m)^(1/8) / log(min(n, m)) as n, m -> infinity",
    "robustness_floor": "1/36 for all n, m >= 2",
    "conjectured_ratio_lower_bound": "sqrt(2)",
}


class BallKind(str, Enum):
    POLYTOPE = "polytope"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class NormedSpace:
    """Finite-dimensional normed space with a centrally symmetric polytope or Euclidean unit ball."""
    dim: int
    kind: BallKind
    vertices: Tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise NormError(f"dimension must be positive, got {self.dim}")
        if self.kind == BallKind.EUCLIDEAN:
            return
        verts = tuple(tuple(parse_rational(v) for v in p) for p in self.vertices)
        if any(len(v) != self.dim for v in verts):
            raise NormError(f"ball vertices must have length {self.dim}")
        keys = set(verts)
        if any(tuple(-x for x in v) not in keys for v in verts):
            raise NormError("unit ball is not centrally symmetric")
        if rank(np.array(verts, dtype=object)) != self.dim:
            raise NormError("unit ball is not full-dimensional")
        # keep only the extreme points, in the order of the lifted cone
        lifted = extreme_rays(cone_over_polytope(verts))
        extreme = tuple(tuple(g[k] / g[-1] for k in range(self.dim)) for g in lifted)
        object.__setattr__(self, 'vertices', extreme)

    @classmethod
    def polytope(cls, vertices: Sequence[Sequence[Any]]) -> 'NormedSpace':
        vertices = [tuple(parse_rational(v) for v in p) for p in vertices]
        if not vertices:
            raise NormError("a polytope ball needs vertices")
        return cls(dim=len(vertices[0]), kind=BallKind.POLYTOPE, vertices=tuple(vertices))

    @classmethod
    def euclidean(cls, dim: int) -> 'NormedSpace':
        return cls(dim=dim, kind=BallKind.EUCLIDEAN)

    @property
    def is_polytope(self) -> bool:
        return self.kind == BallKind.POLYTOPE

    def dual_vertices(self) -> Tuple[Vector, ...]:
        """Vertices of B_X* = {f : f.v <= 1 on B_X}, from the facets of the lifted ball."""
        if not self.is_polytope:
            raise NormError("a Euclidean ball has no dual vertices")
        out = []
        for facet in facet_functionals(cone_over_polytope(self.vertices)):
            *a, b = facet
            out.append(tuple(-x / b for x in a))
        return tuple(out)

    def dual(self) -> 'NormedSpace':
        if not self.is_polytope:
            return NormedSpace.euclidean(self.dim)
        return NormedSpace.polytope(self.dual_vertices())

    def to_dict(self) -> Dict[str, Any]:
        if not self.is_polytope:
            return {"kind": self.kind.value, "dim": self.dim}
        return {"kind": self.kind.value, "vertices": [[format_rational(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'NormedSpace':
        kind = data.get("kind")
        if kind == BallKind.EUCLIDEAN.value:
            return cls.euclidean(int(data["dim"]))
        if kind == BallKind.POLYTOPE.value:
            return cls.polytope(data["vertices"])
        raise SchemaError("kind", [f"unknown normed space kind {kind!r}"])


def square_space() -> NormedSpace:
    return NormedSpace.polytope(SQUARE)


def diamond_space() -> NormedSpace:
    return NormedSpace.polytope(DIAMOND)


def hexagon_space() -> NormedSpace:
    return NormedSpace.polytope(HEXAGON)


def euclidean_space(n: int) -> NormedSpace:
    return NormedSpace.euclidean(n)


def _unit_is_interior(cone: Cone, unit: Vector, tol: float) -> bool:
    if is_polyhedral(cone):
        return all(sum((a * b for a, b in zip(unit, g)), Fraction(0)) > 0 for g in extreme_rays(as_polyhedral(cone)))
    if isinstance(cone, LorentzCone):
        *x, t = unit
        r = cone.r
        if isinstance(r, Fraction) and all(isinstance(v, Fraction) for v in unit):
            return t > 0 and r * r * sum((v * v for v in x), Fraction(0)) < t * t
        return float(t) > float(r) * float(np.linalg.norm(np.array(x, dtype=float))) + tol
    if isinstance(cone, PsdCone):
        return min_eigenvalue_of_vector(unit, cone.n, functional=True, tol=tol) > tol
    raise UnsupportedConeError(cone.kind.value, "order unit check")


@dataclass(frozen=True)
class Gpt:
    """A triple (V, C, u) with u strictly positive on C."""
    cone: Cone
    unit: Vector
    tol: float = field(default=DEFAULT_TOL, compare=False, repr=False)

    def __post_init__(self):
        unit = tuple(parse_rational(v) for v in self.unit)
        if len(unit) != self.cone.dim:
            raise NormError(f"order unit has length {len(unit)}, cone dimension is {self.cone.dim}")
        if not _unit_is_interior(self.cone, unit, self.tol):
            raise NormError("order unit is not strictly positive on the cone")
        object.__setattr__(self, 'unit', unit)

    @property
    def dim(self) -> int:
        return self.cone.dim

    def unit_value(self, v: Sequence[Any]) -> Fraction:
        return sum((a * parse_rational(b) for a, b in zip(self.unit, v)), Fraction(0))

    def to_dict(self) -> Dict[str, Any]:
        return {"cone": self.cone.to_dict(), "unit": [format_rational(v) for v in self.unit]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Gpt':
        try:
            return cls(cone=cone_from_dict(data["cone"]), unit=tuple(data["unit"]))
        except KeyError as e:
            raise SchemaError(str(e), ["GPT documents need 'cone' and 'unit'"]) from e


@dataclass(frozen=True)
class SymmetricGpt:
    """GPT with centre gamma such that 2 gamma - omega is a state for every state omega."""
    gpt: Gpt
    centre: Vector
    space: NormedSpace

    def __post_init__(self):
        centre = tuple(parse_rational(v) for v in self.centre)
        object.__setattr__(self, 'centre', centre)
        if self.gpt.unit_value(centre) != 1:
            raise NormError("centre is not normalized")
        last = self.gpt.dim - 1
        frame = tuple(Fraction(int(k == last)) for k in range(self.gpt.dim))
        if self.gpt.unit != frame or centre != frame:
            raise NormError("symmetric GPTs are kept with u = gamma = e_last")
        if self.space.dim != last:
            raise NormError(f"space dimension {self.space.dim} does not match the GPT ({last} + 1)")
        problems = self.symmetry_violations()
        if problems:
            raise NormError(f"state space is not centrally symmetric at {problems[:3]}")

    @classmethod
    def from_space(cls, space: NormedSpace) -> 'SymmetricGpt':
        """Cone over the unit ball (polytope) or the Lorentz cone (Euclidean ball)."""
        n = space.dim
        cone = cone_over_polytope(space.vertices) if space.is_polytope else LorentzCone(n=n)
        frame = tuple(Fraction(int(k == n)) for k in range(n + 1))
        return cls(gpt=Gpt(cone=cone, unit=frame), centre=frame, space=space)

    @property
    def n(self) -> int:
        return self.space.dim

    def symmetry_violations(self):
        """States omega with 2 gamma - omega outside the cone (exact for polytopes)."""
        if not is_polyhedral(self.gpt.cone):
            return []
        bad = []
        for g in extreme_rays(as_polyhedral(self.gpt.cone)):
            scale = self.gpt.unit_value(g)
            reflected = tuple(2 * c - v / scale for c, v in zip(self.centre, g))
            if membership(self.gpt.cone, reflected).status == Membership.OUTSIDE:
                bad.append(g)
        return bad

    def project(self, v: Sequence[Any]) -> Tuple[Fraction, ...]:
        """Pi(v) = v - u(v) gamma, in the coordinates of X."""
        v = tuple(parse_rational(x) for x in v)
        u = self.gpt.unit_value(v)
        return tuple(x - u * c for x, c in zip(v, self.centre))[:self.n]

    def to_dict(self) -> Dict[str, Any]:
        return {**self.gpt.to_dict(), "centre": [format_rational(v) for v in self.centre],
                "space": self.space.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SymmetricGpt':
        if "space" in data:
            return cls.from_space(NormedSpace.from_dict(data["space"]))
        gpt = Gpt.from_dict(data)
        last = gpt.dim - 1
        if gpt.unit != tuple(Fraction(int(k == last)) for k in range(gpt.dim)):
            raise NormError("symmetric GPTs are kept with u = gamma = e_last")
        return cls(gpt=gpt, centre=tuple(data.get("centre", gpt.unit)), space=_space_from_cone(gpt.cone))


def _space_from_cone(cone: Cone) -> NormedSpace:
    if isinstance(cone, LorentzCone):
        if cone.r != 1:
            raise NormError(f"the Euclidean-ball GPT uses L_n(1), got r = {cone.r}")
        return NormedSpace.euclidean(cone.n)
    if not is_polyhedral(cone):
        raise UnsupportedConeError(cone.kind.value, "symmetric GPT")
    rays = extreme_rays(as_polyhedral(cone))
    return NormedSpace.polytope([tuple(g[k] / g[-1] for k in range(cone.dim - 1)) for g in rays])


@dataclass(frozen=True)
class ProjectiveNormResult:
    """pi(z) with a decomposition over vertex products and the matching dual functional."""
    value: Any
    decomposition: Tuple[Tuple[Tuple[int, int], Fraction], ...] = ()
    dual_functional: Optional[np.ndarray] = field(default=None, repr=False)
    dual_value: Any = None

    def to_dict(self) -> Dict[str, Any]:
        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else v
        return {
            "value": fmt(self.value),
            "decomposition": [{"pair": list(p), "coefficient": format_rational(c)} for p, c in self.decomposition],
            "dual_functional": ([[fmt(x) for x in row] for row in self.dual_functional]
                                if self.dual_functional is not None else None),
            "dual_value": fmt(self.dual_value),
        }
