from fractions import Fraction

import numpy as np
import pytest

from cones.library import DIAMOND, SQUARE, TRIANGLE, cone_over_polytope
from cones.models import LorentzCone
from gptnorms import (Gpt, NormedSpace, SymmetricGpt, apply_local_positive_maps, diamond_space, dual_norm,
                      dual_symmetric_gpt, entanglement_robustness, euclidean_space, gauge_norm, hexagon_space,
                      injective_norm, local_positive_map, omega_state, projected_tensor, projective_norm,
                      projective_norm_lp, robustness_lower_bound, space_norm, square_space, unit_value)
from tensorcone import TensorElement, min_membership
from tensorcone.products import bilinear_value
from utils.exceptions import DimensionMismatchError, NormError, RobustnessError, SchemaError

F = Fraction

CHSH = TensorElement([[1, 1], [1, -1]])


@pytest.fixture
def squit():
    return SymmetricGpt.from_space(square_space())


@pytest.fixture
def rebit():
    return SymmetricGpt.from_space(euclidean_space(2))


@pytest.mark.gptnorms
class TestNormedSpaces:
    """Unit balls, duals and document forms."""

    def test_symmetry_required(self):
        with pytest.raises(NormError):
            NormedSpace.polytope(TRIANGLE)

    def test_full_dimension_required(self):
        with pytest.raises(NormError):
            NormedSpace.polytope([(1, 1), (-1, -1)])

    def test_interior_points_dropped(self):
        space = NormedSpace.polytope(list(SQUARE) + [(0, 0), (F(1, 2), 0), (F(-1, 2), 0)])
        assert set(space.vertices) == set(SQUARE)

    def test_dual_of_square_is_diamond(self):
        assert set(square_space().dual().vertices) == set(DIAMOND)
        assert set(diamond_space().dual().vertices) == set(SQUARE)
        assert len(hexagon_space().dual().vertices) == 6

    def test_euclidean_is_self_dual(self):
        assert euclidean_space(3).dual() == euclidean_space(3)
        with pytest.raises(NormError):
            euclidean_space(3).dual_vertices()

    def test_document_form(self):
        assert set(NormedSpace.from_dict(square_space().to_dict()).vertices) == set(SQUARE)
        assert NormedSpace.from_dict(euclidean_space(2).to_dict()) == euclidean_space(2)
        with pytest.raises(SchemaError):
            NormedSpace.from_dict({"kind": "ellipsoid"})


@pytest.mark.gptnorms
class TestNorms:
    """Gauge, dual, injective and projective norms."""

    @pytest.mark.parametrize("space,vector,expected", [
        (square_space(), (1, 1), 1),
        (square_space(), (2, 0), 2),
        (diamond_space(), (1, 1), 2),
        (diamond_space(), (F(1, 2), F(-1, 4)), F(3, 4)),
        (euclidean_space(2), (3, 4), 5),
    ])
    def test_space_norm(self, space, vector, expected):
        assert space_norm(space, vector) == expected

    def test_irrational_euclidean_length_is_float(self):
        assert space_norm(euclidean_space(2), (1, 1)) == pytest.approx(np.sqrt(2))

    def test_dual_norm(self):
        assert dual_norm(square_space(), (1, 1)) == 2
        assert dual_norm(diamond_space(), (1, 1)) == 1
        with pytest.raises(DimensionMismatchError):
            dual_norm(square_space(), (1, 1, 1))

    def test_polytope_gauge_needs_exact_input(self):
        with pytest.raises(NormError):
            space_norm(square_space(), (0.5, 0.5))

    def test_chsh_on_square_balls(self):
        x = square_space()
        assert injective_norm(x, x, CHSH) == 1
        assert projective_norm(x, x, CHSH) == 2

    def test_projective_certificate(self):
        x, y = square_space(), hexagon_space()
        z = TensorElement([[F(1, 2), -1], [F(1, 3), 2]])
        result = projective_norm_lp(x, y, z)
        assert result.dual_value == result.value
        rebuilt = TensorElement([[0, 0], [0, 0]])
        for (i, j), c in result.decomposition:
            rebuilt = rebuilt + TensorElement.product(x.vertices[i], y.vertices[j]).scaled(c)
        assert rebuilt == z
        assert sum(c for _, c in result.decomposition) == result.value
        w = TensorElement(result.dual_functional)
        assert max(bilinear_value(v, w, u) for v in x.vertices for u in y.vertices) <= 1

    def test_injective_below_projective(self, rng):
        spaces = [square_space(), diamond_space(), hexagon_space()]
        for k in range(20):
            x, y = spaces[k % 3], spaces[(k // 3) % 3]
            z = TensorElement([[F(rng.randint(-5, 5), 3) for _ in range(2)] for _ in range(2)])
            assert injective_norm(x, y, z) <= projective_norm(x, y, z)

    def test_euclidean_norms(self):
        x = euclidean_space(2)
        z = TensorElement([[1.0, 0.0], [0.0, 1.0]])
        assert injective_norm(x, x, z) == pytest.approx(1.0)
        assert projective_norm(x, x, z) == pytest.approx(2.0)

    def test_mixed_pair_rejected(self):
        with pytest.raises(NormError):
            injective_norm(square_space(), euclidean_space(2), CHSH)

    def test_shape_and_scalar_checks(self):
        with pytest.raises(DimensionMismatchError):
            projective_norm(square_space(), square_space(), TensorElement([[1, 0, 0]]))
        with pytest.raises(NormError):
            projective_norm(square_space(), square_space(), TensorElement([[0.5, 0.0], [0.0, 0.5]]))


@pytest.mark.gptnorms
class TestSymmetricGpts:
    """GPT triples, centres and the states omega(z)."""

    def test_unit_must_be_interior(self, square):
        with pytest.raises(NormError):
            Gpt(cone=square, unit=(1, 0, 0))
        with pytest.raises(NormError):
            Gpt(cone=square, unit=(0, 1))

    def test_lorentz_unit(self):
        assert Gpt(cone=LorentzCone(n=2), unit=(0, 0, 1)).dim == 3
        with pytest.raises(NormError):
            Gpt(cone=LorentzCone(n=2), unit=(1, 0, 1))

    def test_asymmetric_state_space(self):
        gpt = Gpt(cone=cone_over_polytope(TRIANGLE), unit=(0, 0, 1))
        with pytest.raises(NormError):
            SymmetricGpt(gpt=gpt, centre=(0, 0, 1), space=square_space())

    def test_gauge_norm(self, squit):
        assert gauge_norm(squit, (1, F(1, 2), 0)) == 1
        with pytest.raises(NormError):
            gauge_norm(squit, (1, 1, 1))

    def test_omega_state(self, squit):
        omega = omega_state(squit, squit, CHSH)
        assert omega.matrix[2][2] == 1
        assert unit_value(squit, squit, omega) == 1
        assert projected_tensor(squit, squit, omega) == CHSH
        with pytest.raises(NormError):
            omega_state(squit, squit, CHSH.scaled(2))

    def test_dual_gpt(self, squit, rebit):
        dual = dual_symmetric_gpt(squit)
        assert set(dual.space.vertices) == set(DIAMOND)
        assert dual_symmetric_gpt(rebit).gpt.cone == LorentzCone(n=2)

    @pytest.mark.parametrize("space", [square_space(), diamond_space(), hexagon_space()])
    def test_dual_gauge_is_the_dual_norm(self, space):
        s = SymmetricGpt.from_space(space)
        dual = dual_symmetric_gpt(s)
        for f in [(1, 0), (F(1, 2), F(-3, 4)), (-2, 5)]:
            assert gauge_norm(dual, (f[0], f[1], 0)) == dual_norm(space, f)

    def test_misscaled_dual_ball_is_rejected(self, squit, mocker):
        shrunk = NormedSpace.polytope([(F(1, 2), 0), (0, F(1, 2)), (F(-1, 2), 0), (0, F(-1, 2))])
        mocker.patch.object(NormedSpace, "dual", return_value=shrunk)
        with pytest.raises(NormError, match="dual gauge norm"):
            dual_symmetric_gpt(squit)

    def test_document_form(self, squit):
        restored = SymmetricGpt.from_dict(squit.to_dict())
        assert set(restored.space.vertices) == set(SQUARE)
        assert restored.gpt.unit == squit.gpt.unit
        doc = {"cone": LorentzCone(n=2, r=2).to_dict(), "unit": ["0/1", "0/1", "1/1"]}
        with pytest.raises(NormError):
            SymmetricGpt.from_dict(doc)


@pytest.mark.gptnorms
class TestRobustness:
    """Entanglement robustness, its lower bound and monotonicity."""

    def test_product_state_is_free(self, squit):
        omega = omega_state(squit, squit, TensorElement([[0, 0], [0, 0]]))
        result = entanglement_robustness(squit.gpt, squit.gpt, omega)
        assert result.value == 0

    def test_chsh_state(self, squit):
        omega = omega_state(squit, squit, CHSH)
        result = entanglement_robustness(squit.gpt, squit.gpt, omega)
        bound = robustness_lower_bound(squit, squit, CHSH)
        assert bound == F(1, 2)
        assert result.value >= bound
        assert -result.witness.pair(omega) == result.value
        cone = squit.gpt.cone
        assert min_membership(cone, cone, result.zeta).inside
        assert min_membership(cone, cone, omega + result.zeta).inside

    def test_bound_vanishes_for_products(self, squit):
        assert robustness_lower_bound(squit, squit, TensorElement([[1, 0], [0, 0]])) == 0

    def test_state_outside_the_maximal_product(self, squit):
        omega = TensorElement([[2, 2, 0], [2, -2, 0], [0, 0, 1]])
        with pytest.raises(RobustnessError):
            entanglement_robustness(squit.gpt, squit.gpt, omega)

    def test_float_state_rejected(self, squit):
        omega = TensorElement([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(RobustnessError):
            entanglement_robustness(squit.gpt, squit.gpt, omega)

    def test_local_maps_do_not_increase_robustness(self, squit):
        omega = omega_state(squit, squit, CHSH)
        before = entanglement_robustness(squit.gpt, squit.gpt, omega).value
        lam1 = local_positive_map(squit.gpt, F(1, 2), (1, 1, 1))
        lam2 = local_positive_map(squit.gpt, F(3, 4), (0, 0, 1))
        unit = np.array(squit.gpt.unit, dtype=object)
        assert (unit.dot(lam1) == unit).all()
        after = entanglement_robustness(squit.gpt, squit.gpt, apply_local_positive_maps(lam1, lam2, omega)).value
        assert after <= before

    def test_local_map_arguments(self, squit):
        with pytest.raises(RobustnessError):
            local_positive_map(squit.gpt, F(3, 2), (0, 0, 1))
        with pytest.raises(RobustnessError):
            local_positive_map(squit.gpt, F(1, 2), (0, 0, 2))
        with pytest.raises(RobustnessError):
            local_positive_map(squit.gpt, F(1, 2), (2, 0, 1))
