from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from cones.double_description import clear_cache, dual_extreme_rays
from cones.hermitian import parts_to_vector, rank_one_projector, trace_coordinates, vector_to_complex, vector_to_parts
from cones.library import SQUARE, cone_over_polytope, prism_cone
from cones.models import ClassicalCone, LorentzCone, PolygonCone, PolyhedralCone, PsdCone, cone_from_dict
from cones.operations import (Membership, apply_linear, dual_cone, extreme_rays, facet_functionals, facets,
                              is_classical, membership, polygon_section, strictly_positive_functional)
from cones.polygons import PointLocation, convex_hull, locate_point, polygon_area
from utils.exceptions import CapExceededError, InvalidConeError, UnsupportedConeError

F = Fraction


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), F(0))


@pytest.mark.cones
class TestConstruction:
    """Validation of cone representations."""

    def test_zero_generator(self):
        with pytest.raises(InvalidConeError):
            PolyhedralCone(dim=2, generators=((1, 0), (0, 0), (0, 1)))

    def test_not_salient(self):
        with pytest.raises(InvalidConeError):
            PolyhedralCone(dim=2, generators=((1, 0), (-1, 0), (0, 1)))

    def test_not_generating(self):
        with pytest.raises(InvalidConeError):
            PolyhedralCone(dim=3, generators=((1, 0, 0), (0, 1, 0)))

    def test_non_convex_polygon(self):
        with pytest.raises(InvalidConeError):
            PolygonCone(vertices=((0, 0), (4, 0), (0, 4), (1, 1)))

    def test_polygon_is_oriented_counterclockwise(self):
        cone = PolygonCone(vertices=((1, 1), (1, -1), (-1, -1), (-1, 1)))
        assert polygon_area(cone.vertices) == 4
        assert [v for v in cone.vertices][0] == (F(1), F(1))

    def test_lorentz_radius_must_be_positive(self):
        with pytest.raises(InvalidConeError):
            LorentzCone(n=2, r=0)

    def test_json_forms(self, square, disk, psd2):
        for cone in (square, disk, psd2, ClassicalCone(n=3), cone_over_polytope(SQUARE)):
            assert cone_from_dict(cone.to_dict()) == cone
        assert square.to_dict()["vertices"][0] == ["1/1", "1/1"]


@pytest.mark.cones
class TestFacialStructure:
    """Extreme rays, facets and duals by double description."""

    @pytest.mark.parametrize("cone_name,rays,facet_count", [
        ("square", 4, 4),
        ("cube", 8, 6),
        ("cross_polytope", 6, 8),
        ("hexagon", 6, 6),
    ])
    def test_counts(self, request, cone_name, rays, facet_count):
        cone = request.getfixturevalue(cone_name)
        assert len(extreme_rays(cone)) == rays
        assert len(facet_functionals(cone)) == facet_count

    def test_facets_are_valid_and_tight(self, cube):
        rays = extreme_rays(cube)
        for facet in facets(cube):
            assert all(_dot(facet.functional, r) >= 0 for r in rays)
            assert len(facet.ray_indices) == 4

    def test_redundant_generators_dropped(self):
        cone = PolyhedralCone(dim=2, generators=((1, 0), (1, 1), (0, 1)))
        assert extreme_rays(cone) == [(F(1), F(0)), (F(0), F(1))]

    def test_double_dual(self, cross_polytope):
        dual = dual_cone(cross_polytope)
        again = dual_cone(dual)
        assert sorted(extreme_rays(again)) == sorted(extreme_rays(cross_polytope))

    def test_lorentz_dual(self):
        assert dual_cone(LorentzCone(n=2, r=2)) == LorentzCone(n=2, r=F(1, 2))

    def test_psd_dual_unsupported(self, psd2):
        with pytest.raises(UnsupportedConeError):
            dual_cone(psd2)

    def test_cap(self, cube):
        clear_cache()
        with pytest.raises(CapExceededError):
            dual_extreme_rays(cube.generators, 4, max_dim=3)

    def test_strictly_positive_functional(self, hexagon):
        phi = strictly_positive_functional(hexagon)
        assert all(_dot(phi, g) > 0 for g in hexagon.generators)


@pytest.mark.cones
class TestMembership:
    """Membership verdicts with their witnesses."""

    def test_polyhedral(self, square):
        assert membership(square, (0, 0, 1)).status == Membership.INSIDE
        assert membership(square, (1, 1, 1)).status == Membership.BOUNDARY
        outside = membership(square, (2, 0, 1))
        assert outside.status == Membership.OUTSIDE
        assert _dot(outside.separating, (2, 0, 1)) < 0
        assert all(_dot(outside.separating, g) >= 0 for g in square.generators)

    def test_polyhedral_matches_scipy(self, cube, rng):
        gens = np.array(cube.generators, dtype=float).T
        for _ in range(25):
            x = [F(rng.randint(-4, 4), 2) for _ in range(3)] + [F(1)]
            reference = linprog(np.zeros(gens.shape[1]), A_eq=gens, b_eq=np.array(x, dtype=float),
                                bounds=[(0, None)] * gens.shape[1], method="highs")
            assert membership(cube, x).is_member == (reference.status == 0)

    def test_lorentz_exact(self, disk):
        assert membership(disk, (3, 4, 5)).status == Membership.BOUNDARY
        assert membership(disk, (1, 0, 2)).status == Membership.INSIDE
        assert membership(disk, (3, 4, 4)).status == Membership.OUTSIDE

    def test_psd(self, psd2):
        assert membership(psd2, (1, 1, 0, 0)).status == Membership.INSIDE
        outside = membership(psd2, (1.0, -1.0, 0.0, 0.0))
        assert outside.status == Membership.OUTSIDE
        assert _dot(outside.separating, (1.0, -1.0, 0.0, 0.0)) < 0

    def test_classical(self):
        result = membership(ClassicalCone(n=2), (1, -1))
        assert result.status == Membership.OUTSIDE
        assert result.separating == (F(0), F(1))


@pytest.mark.cones
class TestClassicality:
    """Simplicial cones are classical; everything else is not."""

    def test_orthant(self, orthant3):
        result = is_classical(orthant3)
        assert result.classical
        assert len(result.basis) == 3

    def test_square_is_not(self, square):
        assert not is_classical(square).classical

    def test_low_dimensional_round_cones(self):
        assert is_classical(LorentzCone(n=1)).classical
        assert is_classical(PsdCone(n=1)).classical
        assert not is_classical(LorentzCone(n=3)).classical
        assert not is_classical(PsdCone(n=2)).classical

    def test_triangular_prism_is_not(self):
        assert not is_classical(prism_cone([(0, 0), (1, 0), (0, 1)])).classical


@pytest.mark.cones
class TestLinearImages:
    """apply_linear and the polygon section of 3-D cones."""

    def test_affine_map_keeps_polygon_kind(self, square):
        image = apply_linear(square, [[2, 0, 1], [0, 1, 0], [0, 0, 1]])
        assert isinstance(image, PolygonCone)
        assert set(image.vertices) == {(F(3), F(1)), (F(-1), F(1)), (F(-1), F(-1)), (F(3), F(-1))}

    def test_section(self):
        cone = PolyhedralCone(dim=3, generators=((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, F(-1, 2))))
        section = polygon_section(cone)
        assert len(section.polygon_cone.vertices) == 4
        product = np.dot(section.to_polygon, section.from_polygon)
        assert all(product[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))

    def test_section_needs_dim_three(self, cube):
        with pytest.raises(UnsupportedConeError):
            polygon_section(cube)


@pytest.mark.cones
class TestHermitian:
    """Real coordinates of Hermitian matrices."""

    def test_coordinates_invert(self):
        v = [F(2), F(3), F(1, 2), F(-1)]
        re, im = vector_to_parts(v, 2)
        assert list(parts_to_vector(re, im)) == v

    def test_trace_pairing(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            u = a + a.conj().T
            b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            h = b + b.conj().T
            w = trace_coordinates(u.real, u.imag)
            v = parts_to_vector(h.real, h.imag)
            assert float(w @ v) == pytest.approx(np.trace(u @ h).real, abs=1e-9)

    def test_rank_one_projector(self):
        psi = np.array([1.0, 1j]) / np.sqrt(2)
        h = vector_to_complex(rank_one_projector(psi), 2)
        assert np.allclose(h @ h, h)
        assert np.trace(h).real == pytest.approx(1.0)


@pytest.mark.cones
class TestPolygons:
    def test_hull_drops_interior_and_collinear(self):
        hull = convex_hull([(0, 0), (2, 0), (1, 0), (1, 1), (0, 2), (2, 2)])
        assert len(hull) == 4

    def test_locate(self):
        square = [(F(x), F(y)) for x, y in SQUARE]
        assert locate_point((0, 0), square) == PointLocation.INSIDE
        assert locate_point((1, 0), square) == PointLocation.BOUNDARY
        assert locate_point((2, 0), square) == PointLocation.OUTSIDE
