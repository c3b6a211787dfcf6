"""Standard bodies and cones used across the toolkit and its tests."""
import itertools
from fractions import Fraction
from typing import List, Sequence, Tuple

from exactnum.rational import parse_rational

from .models import ClassicalCone, PolygonCone, PolyhedralCone
from .polygons import Point

F = Fraction

SQUARE: Tuple[Point, ...] = ((F(1), F(1)), (F(-1), F(1)), (F(-1), F(-1)), (F(1), F(-1)))
DIAMOND: Tuple[Point, ...] = ((F(1), F(0)), (F(0), F(1)), (F(-1), F(0)), (F(0), F(-1)))
TRIANGLE: Tuple[Point, ...] = ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))
PENTAGON: Tuple[Point, ...] = ((F(1), F(0)), (F(0), F(1)), (F(-1), F(0)), (F(0), F(-1)), (F(3, 4), F(-3, 4)))
HEXAGON: Tuple[Point, ...] = (
    (F(2), F(0)), (F(1), F(2)), (F(-1), F(2)), (F(-2), F(0)), (F(-1), F(-2)), (F(1), F(-2))
)


def lift(vertices: Sequence[Sequence]) -> List[Tuple[Fraction, ...]]:
    """(x, 1) for every vertex x."""
    return [tuple(parse_rational(v) for v in x) + (F(1),) for x in vertices]


def cone_over_polytope(vertices: Sequence[Sequence]) -> PolyhedralCone:
    """The cone {(t x, t) : x in conv(vertices), t >= 0}."""
    gens = lift(vertices)
    return PolyhedralCone(dim=len(gens[0]), generators=tuple(gens))


def polygon_cone(vertices: Sequence[Sequence]) -> PolygonCone:
    return PolygonCone(vertices=tuple(tuple(parse_rational(v) for v in p) for p in vertices))


def orthant(n: int) -> PolyhedralCone:
    gens = [tuple(F(1) if i == j else F(0) for j in range(n)) for i in range(n)]
    return PolyhedralCone(dim=n, generators=tuple(gens))


def classical(n: int) -> ClassicalCone:
    return ClassicalCone(n=n)


def cube_vertices(d: int = 3) -> List[Tuple[Fraction, ...]]:
    return [tuple(F(s) for s in signs) for signs in itertools.product((1, -1), repeat=d)]


def cross_polytope_vertices(d: int = 3) -> List[Tuple[Fraction, ...]]:
    out = []
    for i in range(d):
        for s in (1, -1):
            out.append(tuple(F(s) if j == i else F(0) for j in range(d)))
    return out


def prism_vertices(polygon: Sequence[Sequence]) -> List[Tuple[Fraction, ...]]:
    """polygon x [-1, 1] in R^3."""
    return [tuple(parse_rational(v) for v in p) + (F(h),) for h in (1, -1) for p in polygon]


def cube_cone(d: int = 3) -> PolyhedralCone:
    return cone_over_polytope(cube_vertices(d))


def cross_polytope_cone(d: int = 3) -> PolyhedralCone:
    return cone_over_polytope(cross_polytope_vertices(d))


def prism_cone(polygon: Sequence[Sequence]) -> PolyhedralCone:
    return cone_over_polytope(prism_vertices(polygon))


def square_cone() -> PolygonCone:
    return polygon_cone(SQUARE)


def diamond_cone() -> PolygonCone:
    return polygon_cone(DIAMOND)


def triangle_cone() -> PolygonCone:
    return polygon_cone(TRIANGLE)
