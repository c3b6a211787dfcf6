"""Kites T_{a,b} = conv{(a, 1), (-1, b), (a, -1), (1, b)} and the fixed maps between the diamond and the square."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

import numpy as np

from cones.library import polygon_cone
from cones.models import PolygonCone
from exactnum.linalg import as_exact, inverse
from exactnum.rational import format_rational, parse_rational
from utils.exceptions import ParameterRangeError

F = Fraction

H = as_exact([[1, 1, 0], [1, -1, 0], [0, 0, 1]])
H_INV = inverse(H)

SQUARE_CORNERS: Tuple[Tuple[Fraction, Fraction], ...] = ((F(1), F(1)), (F(-1), F(1)), (F(-1), F(-1)), (F(1), F(-1)))


def check_open_unit(name: str, value: Any) -> Fraction:
    v = parse_rational(value)
    if not -1 < v < 1:
        raise ParameterRangeError(name, format_rational(v), "(-1, 1)")
    return v


@dataclass(frozen=True)
class Kite:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'a', check_open_unit('a', self.a))
        object.__setattr__(self, 'b', check_open_unit('b', self.b))

    @property
    def vertices(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        """Counterclockwise from (1, b)."""
        return ((F(1), self.b), (self.a, F(1)), (F(-1), self.b), (self.a, F(-1)))

    def cone(self) -> PolygonCone:
        return polygon_cone(self.vertices)

    def matrix(self) -> np.ndarray:
        return kite_matrix(self.a, self.b)

    def to_dict(self) -> Dict[str, str]:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}


def kite_matrix(a: Any, b: Any) -> np.ndarray:
    """M_{a,b}, which maps the cone over the diamond onto the cone over T_{a,b}.

    M (+-1, 0, 1) = (1 +- a)(+-1, b, 1) and M (0, +-1, 1) = (1 +- b)(a, +-1, 1).
    """
    a = check_open_unit('a', a)
    b = check_open_unit('b', b)
    return as_exact([[1, a * b, a], [a * b, 1, b], [a, b, 1]])
