"""Affine sandwiching of a convex polygon between a kite and the square [-1, 1]^2.

The construction inscribes a quadrilateral ABCD of maximal area and maps the
parallelogram of lines through B, D parallel to AC and through A, C parallel to BD
onto the square, sending A, B, C, D to (a, 1), (1, b), (a, -1), (-1, b). Maximality
keeps the image of the polygon inside the square.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cones.library import polygon_cone
from cones.operations import Membership, membership
from cones.polygons import (Point, PointLocation, apply_affine, as_point, convex_hull, locate_point,
                            separating_edge, signed_area2)
from exactnum.linalg import as_exact
from exactnum.rational import format_rational
from utils.config import DEFAULT_MAX_CORNER_SLIDES
from utils.exceptions import ClassicalConeError, CornerContactError, SandwichError

from .kites import SQUARE_CORNERS, Kite

logger = logging.getLogger(__name__)

F = Fraction

# Quadrilateral labels adjacent to each square corner in the target position.
_CORNER_NEIGHBOURS = {
    (F(1), F(1)): ('A', 'B'),
    (F(-1), F(1)): ('A', 'D'),
    (F(-1), F(-1)): ('C', 'D'),
    (F(1), F(-1)): ('C', 'B'),
}


@dataclass(frozen=True)
class QuadrilateralChoice:
    indices: Tuple[int, int, int, int]
    points: Tuple[Point, Point, Point, Point]
    area: Fraction


@dataclass(frozen=True)
class SandwichResult:
    """Affine map x -> L x + t with kite inside the image and the image inside the blunt square."""
    polygon: Tuple[Point, ...]
    image: Tuple[Point, ...]
    linear: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    shift: Tuple[Fraction, Fraction]
    kite: Kite
    quadrilateral: Tuple[Point, Point, Point, Point]
    area: Fraction
    slides: int = 0
    kite_evidence: Tuple[Tuple[Fraction, ...], ...] = field(default=(), repr=False)
    square_evidence: Tuple[Fraction, ...] = field(default=(), repr=False)
    corner_evidence: Tuple[Tuple[int, Fraction], ...] = field(default=(), repr=False)

    def affine_matrix(self) -> np.ndarray:
        """The map on lifted points (x, y, 1)."""
        (l00, l01), (l10, l11) = self.linear
        return as_exact([[l00, l01, self.shift[0]], [l10, l11, self.shift[1]], [0, 0, 1]])

    def to_dict(self) -> Dict[str, Any]:
        def pts(points):
            return [[format_rational(x), format_rational(y)] for (x, y) in points]
        return {
            "kite": self.kite.to_dict(),
            "linear": [[format_rational(v) for v in row] for row in self.linear],
            "shift": [format_rational(v) for v in self.shift],
            "polygon": pts(self.polygon),
            "image": pts(self.image),
            "quadrilateral": pts(self.quadrilateral),
            "area": format_rational(self.area),
            "slides": self.slides,
            "kite_evidence": [[format_rational(v) for v in d] for d in self.kite_evidence],
            "square_evidence": [format_rational(v) for v in self.square_evidence],
            "corner_evidence": [{"edge": e, "value": format_rational(v)} for e, v in self.corner_evidence],
        }


def prepare_polygon(polygon: Sequence[Sequence]) -> List[Point]:
    """Strict convex hull; rejects triangles and degenerate inputs."""
    points = [as_point(p) for p in polygon]
    hull = convex_hull(points)
    dropped = [p for p in dict.fromkeys(points) if p not in hull]
    if dropped:
        logger.info(f"dropping {len(dropped)} non-extreme point(s): {[tuple(map(str, p)) for p in dropped]}")
    if len(hull) < 3:
        raise SandwichError("polygon is degenerate")
    if len(hull) == 3:
        raise ClassicalConeError("polygon", basis=[(x, y, F(1)) for (x, y) in hull])
    return hull


def _quad_area(points: Sequence[Point]) -> Fraction:
    return signed_area2(points) / 2


def area_maximal_quadrilaterals(polygon: Sequence[Sequence]) -> List[QuadrilateralChoice]:
    """Every vertex quadruple of maximal area, in lexicographic index order."""
    hull = prepare_polygon(polygon)
    best = F(-1)
    found: List[QuadrilateralChoice] = []
    for idx in itertools.combinations(range(len(hull)), 4):
        pts = tuple(hull[i] for i in idx)
        area = _quad_area(pts)
        if area > best:
            best = area
            found = []
        if area == best:
            found.append(QuadrilateralChoice(indices=idx, points=pts, area=area))
    return found


def max_area_quadrilateral(polygon: Sequence[Sequence]) -> QuadrilateralChoice:
    return area_maximal_quadrilaterals(polygon)[0]


def _label(points: Sequence[Point]) -> Dict[str, Point]:
    """Counterclockwise (q0..q3) read as A, D, C, B, rotated so A has the largest (y, x)."""
    r = max(range(4), key=lambda k: (points[k][1], points[k][0]))
    return {
        'A': points[r],
        'D': points[(r + 1) % 4],
        'C': points[(r + 2) % 4],
        'B': points[(r + 3) % 4],
    }


def _square_map(labels: Dict[str, Point]) -> Tuple[Tuple[Tuple[Fraction, Fraction], ...], Tuple[Fraction, Fraction]]:
    a, b, c, d = labels['A'], labels['B'], labels['C'], labels['D']
    u = (b[0] - d[0], b[1] - d[1])
    v = (a[0] - c[0], a[1] - c[1])
    det = u[0] * v[1] - v[0] * u[1]
    if det == 0:
        raise SandwichError("quadrilateral diagonals are parallel")
    # L = 2 [u | v]^{-1}
    l00, l01 = 2 * v[1] / det, -2 * v[0] / det
    l10, l11 = -2 * u[1] / det, 2 * u[0] / det
    t_x = 1 - (l00 * b[0] + l01 * b[1])
    t_y = 1 - (l10 * a[0] + l11 * a[1])
    return ((l00, l01), (l10, l11)), (t_x, t_y)


def _apply(linear, shift, p: Point) -> Point:
    return apply_affine([p], linear, shift)[0]


def _inverse_apply(linear, shift, p: Point) -> Point:
    (l00, l01), (l10, l11) = linear
    det = l00 * l11 - l01 * l10
    x, y = p[0] - shift[0], p[1] - shift[1]
    return ((l11 * x - l01 * y) / det, (-l10 * x + l00 * y) / det)


def _corner_contacts(image: Sequence[Point]) -> List[Point]:
    return [c for c in SQUARE_CORNERS if locate_point(c, image) != PointLocation.OUTSIDE]


def _in_square(image: Sequence[Point]) -> bool:
    return all(-1 <= x <= 1 and -1 <= y <= 1 for (x, y) in image)


def _attempt(hull: List[Point], choice: QuadrilateralChoice, max_slides: int) -> Optional[SandwichResult]:
    labels = _label(choice.points)
    for slide in range(max_slides + 1):
        linear, shift = _square_map(labels)
        image = apply_affine(hull, linear, shift)
        if not _in_square(image):
            raise SandwichError(f"image of quadrilateral {choice.indices} leaves the square")
        contacts = _corner_contacts(image)
        if not contacts:
            return _assemble(hull, image, linear, shift, labels, choice.area, slide)
        if slide == max_slides:
            break
        corner = contacts[0]
        names = _CORNER_NEIGHBOURS[corner]
        moved = next((n for n in names if _apply(linear, shift, labels[n]) in image), names[0])
        target = _inverse_apply(linear, shift, corner)
        point = labels[moved]
        labels = dict(labels)
        labels[moved] = ((point[0] + target[0]) / 2, (point[1] + target[1]) / 2)
        area = _quad_area([labels['A'], labels['D'], labels['C'], labels['B']])
        logger.debug(f"corner {corner} touched; sliding {moved} (area {area})")
        if area != choice.area:
            return None
    return None


def _assemble(hull, image, linear, shift, labels, area, slides) -> SandwichResult:
    a_img = _apply(linear, shift, labels['A'])
    b_img = _apply(linear, shift, labels['B'])
    kite = Kite(a=a_img[0], b=b_img[1])
    image_cone = polygon_cone(image)
    kite_evidence = []
    for (x, y) in kite.vertices:
        outcome = membership(image_cone, (x, y, F(1)))
        if outcome.status == Membership.OUTSIDE:
            raise SandwichError(f"kite vertex ({x}, {y}) is outside the image polygon")
        kite_evidence.append(tuple(outcome.decomposition))
    square_evidence = tuple(min(1 - x, 1 + x, 1 - y, 1 + y) for (x, y) in image)
    corner_evidence = corner_exclusion_evidence(image)
    return SandwichResult(
        polygon=tuple(hull),
        image=tuple(image),
        linear=linear,
        shift=shift,
        kite=kite,
        quadrilateral=(labels['A'], labels['B'], labels['C'], labels['D']),
        area=area,
        slides=slides,
        kite_evidence=tuple(kite_evidence),
        square_evidence=square_evidence,
        corner_evidence=tuple(corner_evidence)
    )


def corner_exclusion_evidence(image: Sequence[Sequence]) -> Tuple[Tuple[int, Fraction], ...]:
    """For each square corner, an edge of the polygon with the corner strictly on its outer side.

    Entries are (edge index, cross product); the cross product is negative for a CCW polygon.
    """
    points = [as_point(p) for p in image]
    out = []
    for corner in SQUARE_CORNERS:
        edge = separating_edge(corner, points)
        if edge < 0:
            raise CornerContactError(corner)
        p, q = points[edge], points[(edge + 1) % len(points)]
        out.append((edge, (q[0] - p[0]) * (corner[1] - p[1]) - (q[1] - p[1]) * (corner[0] - p[0])))
    return tuple(out)


def sandwich(polygon: Sequence[Sequence], max_slides: int = DEFAULT_MAX_CORNER_SLIDES) -> SandwichResult:
    """Map a non-triangular convex polygon between a kite and the blunt square."""
    hull = prepare_polygon(polygon)
    choices = area_maximal_quadrilaterals(hull)
    for choice in choices:
        result = _attempt(hull, choice, max_slides)
        if result is not None:
            logger.info(f"sandwich: quadrilateral {choice.indices}, kite (a, b) = "
                        f"({result.kite.a}, {result.kite.b}), {result.slides} slide(s)")
            return result
    raise SandwichError(f"no area-maximal quadrilateral ({len(choices)} tried) keeps the square corners out")


def verify_sandwich(result: SandwichResult) -> bool:
    """Replay both inclusions and the corner exclusions exactly."""
    image = apply_affine(result.polygon, result.linear, result.shift)
    if tuple(image) != result.image or not _in_square(image):
        return False
    if any(locate_point(v, image) == PointLocation.OUTSIDE for v in result.kite.vertices):
        return False
    return all(separating_edge(c, image) >= 0 for c in SQUARE_CORNERS)
