"""Exact planar geometry on rational points."""
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple

from exactnum.rational import parse_rational
from utils.exceptions import InvalidConeError

Point = Tuple[Fraction, Fraction]


class PointLocation(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def as_point(p: Sequence) -> Point:
    if len(p) != 2:
        raise InvalidConeError(f"planar point needs 2 coordinates, got {len(p)}")
    return (parse_rational(p[0]), parse_rational(p[1]))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle (o, a, b); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Sequence]) -> List[Point]:
    """Strict convex hull, counterclockwise, collinear points dropped (monotone chain)."""
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def signed_area2(polygon: Sequence[Point]) -> Fraction:
    """Shoelace sum (twice the signed area)."""
    total = Fraction(0)
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def polygon_area(polygon: Sequence[Point]) -> Fraction:
    return abs(signed_area2(polygon)) / 2


def orient_ccw(points: Sequence[Sequence]) -> List[Point]:
    """Return the points in counterclockwise convex order, starting from the first given point.

    Raises InvalidConeError unless the points are in strictly convex position.
    """
    pts = [as_point(p) for p in points]
    if len(set(pts)) != len(pts):
        raise InvalidConeError("polygon has repeated vertices")
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise InvalidConeError("polygon is degenerate (fewer than 3 affinely spanning vertices)")
    if len(hull) != len(pts):
        raise InvalidConeError("polygon vertices are not in convex position")
    start = hull.index(pts[0])
    return hull[start:] + hull[:start]


def locate_point(point: Sequence, polygon: Sequence[Point]) -> PointLocation:
    """Locate a point relative to a counterclockwise convex polygon."""
    p = as_point(point)
    on_edge = False
    n = len(polygon)
    for i in range(n):
        c = cross(polygon[i], polygon[(i + 1) % n], p)
        if c < 0:
            return PointLocation.OUTSIDE
        if c == 0:
            on_edge = True
    return PointLocation.BOUNDARY if on_edge else PointLocation.INSIDE


def separating_edge(point: Sequence, polygon: Sequence[Point]) -> int:
    """Index i of an edge (v_i, v_{i+1}) with the point strictly on its outer side, or -1."""
    p = as_point(point)
    n = len(polygon)
    for i in range(n):
        if cross(polygon[i], polygon[(i + 1) % n], p) < 0:
            return i
    return -1


def apply_affine(polygon: Sequence[Point], linear: Sequence[Sequence], shift: Sequence) -> List[Point]:
    """Image of each point under x -> L x + t."""
    (l00, l01), (l10, l11) = [[parse_rational(v) for v in row] for row in linear]
    t0, t1 = (parse_rational(v) for v in shift)
    return [(l00 * x + l01 * y + t0, l10 * x + l11 * y + t1) for (x, y) in polygon]
