"""Cone representations.

Every cone is an immutable value object with a `dim` (ambient dimension) and a
JSON form produced by `to_dict`. Polyhedral data is exact; Lorentz radii may be
exact or float.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from exactnum.linalg import rank
from exactnum.lp import LpProblem, lp_solve
from exactnum.rational import format_rational, parse_rational
from utils.config import DEFAULT_MAX_DIM
from utils.exceptions import CapExceededError, InvalidConeError, SchemaError, UnsupportedConeError

from .hermitian import hermitian_dim
from .polygons import Point, orient_ccw

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Scalar = Union[Fraction, float]


class ConeKind(str, Enum):
    POLYHEDRAL = "polyhedral"
    LORENTZ = "lorentz"
    PSD = "psd"
    CLASSICAL = "classical"
    POLYGON = "polygon"


def _as_vector(values: Sequence[Any]) -> Vector:
    return tuple(parse_rational(v) for v in values)


def is_salient(generators: Sequence[Vector]) -> bool:
    """No nontrivial nonnegative combination of the generators vanishes."""
    if not generators:
        return True
    dim = len(generators[0])
    rows = [[g[i] for g in generators] for i in range(dim)]
    rows.append([Fraction(1)] * len(generators))
    rhs = [Fraction(0)] * dim + [Fraction(1)]
    outcome = lp_solve(LpProblem.from_arrays([0] * len(generators), rows, rhs))
    return outcome.is_infeasible


@dataclass(frozen=True)
class PolyhedralCone:
    """Finitely generated proper cone."""
    dim: int
    generators: Tuple[Vector, ...]
    facet_hint: Optional[Tuple[Vector, ...]] = field(default=None, compare=False)
    validate: bool = field(default=True, compare=False, repr=False)

    kind = ConeKind.POLYHEDRAL

    def __post_init__(self):
        gens = tuple(_as_vector(g) for g in self.generators)
        object.__setattr__(self, 'generators', gens)
        if self.facet_hint is not None:
            object.__setattr__(self, 'facet_hint', tuple(_as_vector(f) for f in self.facet_hint))
        if not self.validate:
            return
        if self.dim < 1:
            raise InvalidConeError(f"dimension must be positive, got {self.dim}")
        if self.dim > DEFAULT_MAX_DIM:
            raise CapExceededError("cone dimension", self.dim, DEFAULT_MAX_DIM)
        if not gens:
            raise InvalidConeError("no generators")
        for g in gens:
            if len(g) != self.dim:
                raise InvalidConeError(f"generator {g} has length {len(g)}, expected {self.dim}")
            if all(v == 0 for v in g):
                raise InvalidConeError("zero generator")
        if rank(np.array(gens, dtype=object)) != self.dim:
            raise InvalidConeError("generators do not span the ambient space (not generating)")
        if not is_salient(gens):
            raise InvalidConeError("cone contains a line (not salient)")

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[Any]], dim: Optional[int] = None) -> 'PolyhedralCone':
        gens = tuple(_as_vector(g) for g in generators)
        if dim is None:
            if not gens:
                raise InvalidConeError("no generators")
            dim = len(gens[0])
        return cls(dim=dim, generators=gens)

    def generator_array(self) -> np.ndarray:
        return np.array(self.generators, dtype=object).reshape(len(self.generators), self.dim)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "generators": [[format_rational(v) for v in g] for g in self.generators],
        }


@dataclass(frozen=True)
class LorentzCone:
    """L_n(r) = {(x, t) in R^n x R : ||x||_2 <= r t}."""
    n: int
    r: Scalar = Fraction(1)

    kind = ConeKind.LORENTZ

    def __post_init__(self):
        r = self.r if isinstance(self.r, float) else parse_rational(self.r)
        object.__setattr__(self, 'r', r)
        if self.n < 1:
            raise InvalidConeError(f"Lorentz cone needs n >= 1, got {self.n}")
        if r <= 0:
            raise InvalidConeError(f"Lorentz radius must be positive, got {r}")

    @property
    def dim(self) -> int:
        return self.n + 1

    def to_dict(self) -> Dict[str, Any]:
        r = format_rational(self.r) if isinstance(self.r, Fraction) else self.r
        return {"kind": self.kind.value, "n": self.n, "r": r}


@dataclass(frozen=True)
class PsdCone:
    """n x n positive semidefinite Hermitian matrices, in the coordinates of cones.hermitian."""
    n: int

    kind = ConeKind.PSD

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConeError(f"PSD cone needs n >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return hermitian_dim(self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "n": self.n}


@dataclass(frozen=True)
class ClassicalCone:
    """The nonnegative orthant R_+^n."""
    n: int

    kind = ConeKind.CLASSICAL

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConeError(f"classical cone needs n >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n

    @property
    def generators(self) -> Tuple[Vector, ...]:
        return tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(self.n))
            for i in range(self.n)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "n": self.n}


@dataclass(frozen=True)
class PolygonCone:
    """Cone over a convex polygon K: {(t x, t) : x in K, t >= 0}."""
    vertices: Tuple[Point, ...]

    kind = ConeKind.POLYGON

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(orient_ccw(self.vertices)))

    @property
    def dim(self) -> int:
        return 3

    @property
    def generators(self) -> Tuple[Vector, ...]:
        return tuple((x, y, Fraction(1)) for (x, y) in self.vertices)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "vertices": [[format_rational(x), format_rational(y)] for (x, y) in self.vertices],
        }


Cone = Union[PolyhedralCone, LorentzCone, PsdCone, ClassicalCone, PolygonCone]


def as_polyhedral(cone: Cone) -> PolyhedralCone:
    """Polyhedral view of a finitely generated cone."""
    if isinstance(cone, PolyhedralCone):
        return cone
    if isinstance(cone, (ClassicalCone, PolygonCone)):
        return PolyhedralCone(dim=cone.dim, generators=cone.generators, validate=False)
    raise UnsupportedConeError(cone.kind.value, "polyhedral conversion")


def is_polyhedral(cone: Cone) -> bool:
    return isinstance(cone, (PolyhedralCone, ClassicalCone, PolygonCone))


def cone_from_dict(data: Dict[str, Any]) -> Cone:
    """Build a cone from its JSON form."""
    kind = data.get("kind")
    try:
        if kind == ConeKind.POLYHEDRAL.value:
            gens = data["generators"]
            dim = int(data.get("dim", len(gens[0]) if gens else 0))
            return PolyhedralCone(dim=dim, generators=tuple(_as_vector(g) for g in gens))
        if kind == ConeKind.LORENTZ.value:
            r = data.get("r", "1/1")
            r = r if isinstance(r, float) else parse_rational(r)
            return LorentzCone(n=int(data["n"]), r=r)
        if kind == ConeKind.PSD.value:
            return PsdCone(n=int(data["n"]))
        if kind == ConeKind.CLASSICAL.value:
            return ClassicalCone(n=int(data["n"]))
        if kind == ConeKind.POLYGON.value:
            return PolygonCone(vertices=tuple(tuple(parse_rational(v) for v in p) for p in data["vertices"]))
    except (KeyError, ValueError, TypeError) as e:
        raise SchemaError("cone", [f"{type(e).__name__}: {e}"]) from e
    raise SchemaError("cone", [f"unknown cone kind {kind!r}"])
