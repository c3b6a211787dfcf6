"""Circumradius over inradius of the regular simplex, the extremal asphericity."""
import logging
import math
from fractions import Fraction
from typing import List, Tuple

from utils.exceptions import ParameterRangeError

logger = logging.getLogger(__name__)

MIN_SIMPLEX_DIM = 2
MAX_SIMPLEX_DIM = 6


def _check_dim(d: int) -> None:
    if not MIN_SIMPLEX_DIM <= d <= MAX_SIMPLEX_DIM:
        raise ParameterRangeError("d", d, f"[{MIN_SIMPLEX_DIM}, {MAX_SIMPLEX_DIM}]")


def regular_simplex(d: int) -> List[Tuple[Fraction, ...]]:
    """The standard basis of R^(d+1), a regular d-simplex inside the hyperplane sum x = 1."""
    _check_dim(d)
    return [tuple(Fraction(int(i == j)) for j in range(d + 1)) for i in range(d + 1)]


def _squared_distance(p, q) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def simplex_radii_squared(d: int) -> Tuple[Fraction, Fraction]:
    """(circumradius^2, inradius^2) about the centroid, exactly.

    The inradius is the distance from the centroid to the centroid of the facet opposite
    a vertex, which is the foot of the perpendicular for a regular simplex.
    """
    vertices = regular_simplex(d)
    m = len(vertices)
    centroid = tuple(sum((v[k] for v in vertices), Fraction(0)) / m for k in range(m))
    circum = max(_squared_distance(v, centroid) for v in vertices)
    facet = vertices[1:]
    facet_centroid = tuple(sum((v[k] for v in facet), Fraction(0)) / len(facet) for k in range(m))
    inner = _squared_distance(facet_centroid, centroid)
    return circum, inner


def simplex_asphericity_squared(d: int) -> Fraction:
    """(circumradius / inradius)^2 of the regular d-simplex; equals d^2."""
    circum, inner = simplex_radii_squared(d)
    ratio = circum / inner
    logger.debug(f"simplex d={d}: R^2={circum}, r^2={inner}, ratio^2={ratio}")
    return ratio


def simplex_asphericity_value(d: int) -> float:
    return math.sqrt(simplex_asphericity_squared(d))
