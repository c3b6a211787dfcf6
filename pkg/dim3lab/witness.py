"""The entangled witness Omega and its strict CHSH separation from the minimal product."""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from cones.models import Cone, PolygonCone, is_polyhedral
from cones.operations import polygon_section
from cones.polygons import Point, as_point
from exactnum.linalg import as_exact, identity, inverse, matmul
from exactnum.rational import format_matrix, format_rational, parse_rational
from tensorcone.certificates import certify
from tensorcone.models import SeparationCertificate, TensorElement
from utils.config import DEFAULT_MAX_CORNER_SLIDES
from utils.exceptions import CertificateError, CornerContactError, SandwichError, UnsupportedConeError

from .kites import H_INV, SQUARE_CORNERS, kite_matrix
from .sandwich import SandwichResult, sandwich

logger = logging.getLogger(__name__)

CHSH = as_exact([[1, 1, 0], [1, -1, 0], [0, 0, 0]])


def build_omega(a1: Any, b1: Any, a2: Any, b2: Any) -> TensorElement:
    """Coefficient matrix M_{a1,b1} H^{-1} M_{a2,b2} of the witness (M_{a1,b1} (x) M_{a2,b2}) H^{-1}.

    Its entries satisfy w11 + w12 + w21 - w22 = 2 w33.
    """
    m1 = kite_matrix(a1, b1)
    m2 = kite_matrix(a2, b2)
    return TensorElement(matmul(matmul(m1, H_INV), m2))


def omega_matrix(a1: Any, b1: Any, a2: Any, b2: Any) -> np.ndarray:
    """Operator form M_{a2,b2} H^{-1} M_{a1,b1}, the transpose of the coefficient matrix."""
    return build_omega(a1, b1, a2, b2).matrix.T


def chsh_value(p1: Sequence, p2: Sequence) -> Fraction:
    x1, y1 = as_point(p1)
    x2, y2 = as_point(p2)
    return x1 * x2 + x1 * y2 + y1 * x2 - y1 * y2


def chsh_functional(level: Any) -> TensorElement:
    """level * (u (x) u) - CHSH with u = e_3^*; on lifted products it reads level - chsh_value."""
    m = -CHSH.copy()
    m[2, 2] = parse_rational(level)
    return TensorElement(m)


def _blunt_vertices(polygon: Sequence[Sequence], name: str) -> List[Point]:
    points = [as_point(p) for p in polygon]
    for p in points:
        if p in SQUARE_CORNERS:
            raise CornerContactError(p)
        if not (-1 <= p[0] <= 1 and -1 <= p[1] <= 1):
            raise SandwichError(f"{name} vertex ({p[0]}, {p[1]}) lies outside the square")
    return points


def strict_separation_margin(polygon1: Sequence[Sequence], polygon2: Sequence[Sequence]) -> Fraction:
    """Largest CHSH value over vertex pairs of two polygons inside the blunt square; always below 2."""
    v1 = _blunt_vertices(polygon1, "first polygon")
    v2 = _blunt_vertices(polygon2, "second polygon")
    margin = max(chsh_value(p, q) for p in v1 for q in v2)
    if margin >= 2:
        raise SandwichError(f"CHSH margin {margin} is not below 2")
    return margin


def polygon_base(cone: Cone, position: str) -> Tuple[List[Point], np.ndarray, Dict[str, Any]]:
    """Polygon base of a 3-D polyhedral cone and the linear map onto its lifted cone."""
    if isinstance(cone, PolygonCone):
        return list(cone.vertices), identity(3), {"section": "identity"}
    if not is_polyhedral(cone) or cone.dim != 3:
        raise UnsupportedConeError(str(getattr(cone.kind, 'value', cone.kind)), f"entangle_3d ({position} cone)")
    section = polygon_section(cone)
    return list(section.polygon_cone.vertices), section.to_polygon, {
        "section": format_matrix(section.to_polygon),
        "functional": [format_rational(v) for v in section.functional],
    }


def entangle_3d(c1: Cone, c2: Cone, max_slides: int = DEFAULT_MAX_CORNER_SLIDES) -> SeparationCertificate:
    """Certificate that the minimal and maximal products of two non-classical 3-D cones differ.

    Each cone is carried onto the cone over a polygon, sandwiched between a kite and the
    square, and the kite witness Omega is pulled back together with the CHSH functional.
    """
    steps = []
    maps = []
    results: List[SandwichResult] = []
    for position, cone in (("first", c1), ("second", c2)):
        polygon, to_polygon, section_info = polygon_base(cone, position)
        result = sandwich(polygon, max_slides)
        results.append(result)
        maps.append(matmul(result.affine_matrix(), to_polygon))
        steps.append({"step": "sandwich", "position": position, **section_info, **result.to_dict()})

    k1, k2 = results[0].kite, results[1].kite
    omega = build_omega(k1.a, k1.b, k2.a, k2.b)
    margin = strict_separation_margin(results[0].image, results[1].image)
    base_functional = chsh_functional(margin)
    value = base_functional.pair(omega)
    if value >= 0:
        raise CertificateError(f"kite witness is not separated (value {value})")
    steps.append({
        "step": "kite_witness",
        "omega": format_matrix(omega.matrix),
        "margin": format_rational(margin),
        "value": format_rational(value),
    })

    t1, t2 = maps
    witness = TensorElement(matmul(matmul(inverse(t1), omega.matrix), inverse(t2).T))
    functional = TensorElement(matmul(matmul(t1.T, base_functional.matrix), t2))
    logger.info(f"entangle_3d: kites {k1.to_dict()} / {k2.to_dict()}, margin {margin}, separation {value}")
    return certify(c1, c2, witness, functional, proof_chain=steps)
