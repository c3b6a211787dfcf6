import json
import random
from fractions import Fraction

import pytest

from cones.library import (HEXAGON, cross_polytope_cone, cube_cone, diamond_cone, orthant, polygon_cone, square_cone,
                           triangle_cone)
from cones.models import ClassicalCone, LorentzCone, PsdCone
from utils.config import DEFAULT_SEED

F = Fraction


@pytest.fixture
def rng():
    """Seeded random.Random for reproducible rational samples."""
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def rational_sampler(rng):
    """Draw rationals from the open interval (-1, 1) with a bounded denominator."""
    def sample(den: int = 97) -> Fraction:
        return F(rng.randint(-den + 1, den - 1), den)
    return sample


@pytest.fixture
def square():
    return square_cone()


@pytest.fixture
def diamond():
    return diamond_cone()


@pytest.fixture
def triangle():
    return triangle_cone()


@pytest.fixture
def hexagon():
    return polygon_cone(HEXAGON)


@pytest.fixture
def cube():
    return cube_cone(3)


@pytest.fixture
def cross_polytope():
    return cross_polytope_cone(3)


@pytest.fixture
def orthant3():
    return orthant(3)


@pytest.fixture
def classical3():
    return ClassicalCone(n=3)


@pytest.fixture
def disk():
    return LorentzCone(n=2)


@pytest.fixture
def psd2():
    return PsdCone(n=2)


@pytest.fixture
def write_doc(tmp_path):
    """Write a JSON document under tmp_path and return its path as a string."""
    def write(name: str, data) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write
