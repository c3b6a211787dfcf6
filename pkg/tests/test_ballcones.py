from fractions import Fraction

import numpy as np
import pytest

from ballcones import (CenteredTensor, CliffordFamily, certify_entangleable_semiquantum, certify_ice_cream_frame,
                       check_clifford_relations, clifford_family, disk_level, ice_cream_frame_slacks,
                       lorentz_coordinate_retract, lorentz_max_membership_centered, lorentz_min_membership_centered,
                       lorentz_psd_retract, min_decomposition_centered, psd_lorentz_iso_2x2, psd_pinching_retract,
                       psd_to_disk_retract, simplex_asphericity_squared, simplex_asphericity_value,
                       simplex_radii_squared)
from ballcones.clifford import PAULI_X, cidentity
from cones.library import DIAMOND
from cones.models import LorentzCone, PsdCone
from exactnum.linalg import identity, matmul
from tensorcone import TensorElement, verify_certificate
from utils.exceptions import (CertificateError, ClassicalConeError, DimensionMismatchError, ParameterRangeError,
                              UnsupportedConeError)

F = Fraction

SAMPLES = 60


@pytest.mark.ballcones
class TestCenteredTensors:
    """Operator and trace norm criteria for centered tensors."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_max_criterion_is_operator_norm(self, n):
        rng = np.random.default_rng(n)
        block = rng.normal(size=(n, n))
        sigma = np.linalg.norm(block, 2)
        assert lorentz_max_membership_centered(CenteredTensor(block=block, apex=1.1 * sigma))
        assert not lorentz_max_membership_centered(CenteredTensor(block=block, apex=0.9 * sigma))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_min_criterion_is_trace_norm(self, n):
        rng = np.random.default_rng(10 + n)
        block = rng.normal(size=(n, n))
        nuclear = np.linalg.norm(block, "nuc")
        z = CenteredTensor(block=block, apex=1.0)
        assert lorentz_min_membership_centered(z, 1.05 * nuclear)
        assert not lorentz_min_membership_centered(z, 0.95 * nuclear)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_identity_gap(self, n):
        z = CenteredTensor.identity(n)
        assert lorentz_max_membership_centered(z)
        assert lorentz_min_membership_centered(z, n)
        assert not lorentz_min_membership_centered(z, n - F(1, 2))

    def test_decomposition_reproduces_the_tensor(self):
        z = CenteredTensor.identity(3, t=2)
        decomposition = min_decomposition_centered(z, 3)
        assert decomposition.residual < 1e-9
        assert all(coef >= 0 for coef, _, _ in decomposition.terms)
        total = sum(coef * np.outer(x, y) for coef, x, y in decomposition.terms)
        assert np.allclose(total, np.array(z.to_tensor().matrix, dtype=float))

    def test_decomposition_outside_the_minimal_product(self):
        with pytest.raises(ParameterRangeError):
            min_decomposition_centered(CenteredTensor.identity(3), 2)

    def test_radius_and_apex_ranges(self):
        with pytest.raises(ParameterRangeError):
            lorentz_min_membership_centered(CenteredTensor.identity(2), 0)
        with pytest.raises(ParameterRangeError):
            CenteredTensor.identity(2, t=-1)
        with pytest.raises(DimensionMismatchError):
            CenteredTensor(block=np.zeros((2, 3)), apex=1.0)

    def test_tensor_form(self):
        z = CenteredTensor.identity(2, t=F(1, 2))
        assert z.to_tensor().matrix[2][2] == F(1, 2)
        assert CenteredTensor.from_tensor(z.to_tensor()).apex == F(1, 2)
        with pytest.raises(ParameterRangeError):
            CenteredTensor.from_tensor(TensorElement([[1, 0, 1], [0, 1, 0], [0, 0, 1]]))


@pytest.mark.ballcones
class TestClifford:
    """Jordan-Wigner families and their exact relations."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_relations_hold(self, n):
        family = clifford_family(n)
        assert family.size == 2 ** n
        assert len(family.matrices) == 2 * n
        assert check_clifford_relations(family) == []

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_trace_maps_invert_up_to_size(self, n):
        family = clifford_family(n)
        product = matmul(family.phi(), family.psi())
        assert (product == identity(2 * n + 1) * family.size).all()

    def test_corrupted_family_is_reported(self):
        family = clifford_family(2)
        corrupted = CliffordFamily(n=2, matrices=(cidentity(4),) + family.matrices[1:])
        problems = check_clifford_relations(corrupted)
        assert any("traceless" in p for p in problems)

    def test_construction_rechecks_relations(self, mocker):
        mocker.patch("ballcones.clifford._jordan_wigner", return_value=[PAULI_X, PAULI_X])
        with pytest.raises(ParameterRangeError):
            clifford_family(1)

    @pytest.mark.parametrize("n", [0, 5])
    def test_range(self, n):
        with pytest.raises(ParameterRangeError):
            clifford_family(n)


@pytest.mark.ballcones
class TestRoundRetracts:
    """Retracts among PSD and Lorentz cones."""

    def test_clifford_retract(self):
        r = lorentz_psd_retract(2, samples=SAMPLES)
        assert r.verification.ok
        assert r.source == PsdCone(n=4)
        assert r.target == LorentzCone(n=4)

    def test_pinching(self):
        assert psd_pinching_retract(2, 3, samples=SAMPLES).verification.ok
        with pytest.raises(ParameterRangeError):
            psd_pinching_retract(4, 3)

    def test_qubit_isomorphism(self):
        r = psd_lorentz_iso_2x2(samples=SAMPLES)
        assert r.verification.ok
        assert r.target == LorentzCone(n=3)

    def test_coordinate_drop(self):
        assert lorentz_coordinate_retract(3, 2, samples=SAMPLES).verification.ok
        with pytest.raises(ParameterRangeError):
            lorentz_coordinate_retract(2, 3)

    def test_psd_to_disk(self):
        r = psd_to_disk_retract(3, samples=SAMPLES)
        assert r.source == PsdCone(n=3)
        assert r.target == LorentzCone(n=2)
        assert r.verification.ok


@pytest.mark.ballcones
class TestSemiquantum:
    """Polyhedral cones against PSD cones."""

    def test_disk_level(self):
        assert disk_level(DIAMOND) == F(3, 2)
        assert disk_level([(F(1), F(1, 2))]) == F(13, 8)

    def test_square_and_qubits(self, square):
        cert = certify_entangleable_semiquantum(square, 2, samples=100)
        assert cert.separation_value < 0
        check = cert.proof_chain[-1]
        assert check["step"] == "rank_one_spot_check"
        assert check["passed"]
        assert verify_certificate(cert, square, PsdCone(n=2))

    def test_failed_spot_check(self, square, mocker):
        mocker.patch("ballcones.semiquantum.spot_check_functional",
                     return_value={"step": "rank_one_spot_check", "minimum": -1.0, "passed": False})
        with pytest.raises(CertificateError):
            certify_entangleable_semiquantum(square, 2)

    def test_ranges(self, square, orthant3):
        with pytest.raises(ParameterRangeError):
            certify_entangleable_semiquantum(square, 1)
        with pytest.raises(ClassicalConeError):
            certify_entangleable_semiquantum(orthant3, 2)


@pytest.mark.ballcones
class TestIceCreamFrame:
    """Frames sandwiching a cone between two Lorentz cones."""

    def test_square_frame(self, square):
        cert = certify_ice_cream_frame(square, identity(3), F(3, 2))
        assert cert.separation_value == F(-1, 2)
        assert verify_certificate(cert, square, LorentzCone(n=2))
        assert cert.proof_chain[0]["step"] == "ice_cream_frame"

    def test_slacks(self, square):
        slacks = ice_cream_frame_slacks(square, identity(3), F(3, 2))
        assert all(v == 0 for v in slacks["inner"])
        assert all(v > 0 for v in slacks["outer"])

    def test_radius_too_small(self, square):
        with pytest.raises(CertificateError):
            certify_ice_cream_frame(square, identity(3), 1)

    def test_invalid_inputs(self, square, disk):
        with pytest.raises(ParameterRangeError):
            certify_ice_cream_frame(square, identity(3), 2)
        with pytest.raises(ParameterRangeError):
            certify_ice_cream_frame(square, [[1, 0, 0], [0, 0, 0], [0, 0, 1]], F(3, 2))
        with pytest.raises(DimensionMismatchError):
            certify_ice_cream_frame(square, identity(2), F(3, 2))
        with pytest.raises(UnsupportedConeError):
            certify_ice_cream_frame(disk, identity(3), F(3, 2))


@pytest.mark.ballcones
class TestAsphericity:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_regular_simplex(self, d):
        assert simplex_asphericity_squared(d) == d * d
        assert simplex_asphericity_value(d) == pytest.approx(d)

    def test_triangle_radii(self):
        assert simplex_radii_squared(2) == (F(2, 3), F(1, 6))

    @pytest.mark.parametrize("d", [1, 7])
    def test_range(self, d):
        with pytest.raises(ParameterRangeError):
            simplex_asphericity_squared(d)
