from fractions import Fraction

import pytest

from cones.models import LorentzCone
from dim3lab import H_INV
from tensorcone import (EvidenceEntry, RightFactor, SeparationCertificate, TensorElement, apply_local_maps,
                        build_certificate, certify, max_membership, min_membership, min_tensor_generators,
                        nuclearity_bruteforce, pair_functional, pullback_functional, tensor_product,
                        verify_certificate)
from utils.exceptions import (CapExceededError, CertificateError, DimensionMismatchError, MixedScalarError,
                              UnsupportedConeError)

F = Fraction


@pytest.fixture
def square_certificate(square):
    return nuclearity_bruteforce(square, square).certificate


@pytest.mark.tensorcone
class TestTensorElement:
    """Coefficient matrices and the trace pairing."""

    def test_product_convention(self):
        z = tensor_product((1, 2), (3, 4, 5))
        assert z.shape == (2, 3)
        assert z.matrix[1][2] == 10
        assert z.vec()[1 * 3 + 2] == 10

    def test_pairing(self):
        f = TensorElement([[1, 0], [0, -1]])
        z = TensorElement([[F(1, 2), 7], [7, F(1, 2)]])
        assert pair_functional(f, z) == 0

    def test_mixed_scalars_rejected(self):
        with pytest.raises(MixedScalarError):
            TensorElement([[F(1), 0.5]])

    def test_local_maps_and_adjoint(self):
        a = [[1, 2], [0, 1]]
        b = [[0, 1], [1, 0]]
        z = TensorElement([[1, 2], [3, 4]])
        f = TensorElement([[F(1, 2), -1], [2, 3]])
        assert f.pair(apply_local_maps(a, b, z)) == pullback_functional(a, b, f).pair(z)

    def test_local_map_shape_check(self):
        with pytest.raises(DimensionMismatchError):
            apply_local_maps([[1, 0, 0]], [[1]], TensorElement([[1, 2]]))

    def test_document_form(self):
        z = TensorElement([[F(-1), F(1, 3)]])
        assert z.to_dict() == {"matrix": [["-1/1", "1/3"]]}
        assert TensorElement.from_dict(z.to_dict()) == z


@pytest.mark.tensorcone
class TestProducts:
    """Membership in the minimal and maximal tensor products."""

    def test_product_generators(self, square):
        assert len(min_tensor_generators(square, square)) == 16

    def test_product_of_rays_is_in_both(self, square, diamond):
        z = tensor_product(square.generators[0], diamond.generators[1])
        assert max_membership(square, diamond, z).member
        result = min_membership(square, diamond, z)
        assert result.inside
        assert len(result.decomposition) == 1

    def test_diamond_witness(self, diamond):
        z = TensorElement(H_INV)
        mx = max_membership(diamond, diamond, z)
        assert mx.member
        assert len(mx.evidence) == 16
        mn = min_membership(diamond, diamond, z)
        assert not mn.inside
        assert mn.value <= -1
        assert all(mn.functional.pair(g) >= 0 for g in min_tensor_generators(diamond, diamond))

    def test_max_violation(self, square):
        z = TensorElement([[0, 0, 0], [0, 0, 0], [0, 0, -1]])
        result = max_membership(square, square, z)
        assert not result.member
        assert result.violation.value < 0

    def test_shape_check(self, square, cube):
        with pytest.raises(DimensionMismatchError):
            max_membership(square, cube, TensorElement([[1, 0, 0]] * 3))

    def test_float_tensor_rejected(self, square):
        with pytest.raises(MixedScalarError):
            min_membership(square, square, TensorElement([[0.5, 0, 0], [0, 0, 0], [0, 0, 1.0]]))


@pytest.mark.tensorcone
class TestNuclearity:
    """Brute-force comparison of the minimal and maximal products."""

    def test_simplex_factor_is_nuclear(self, orthant3, square):
        assert nuclearity_bruteforce(orthant3, square).nuclear

    def test_square_pair_is_entangleable(self, square, square_certificate):
        assert square_certificate is not None
        assert square_certificate.separation_value < 0
        assert verify_certificate(square_certificate, square, square)

    def test_cap(self, cube):
        with pytest.raises(CapExceededError):
            nuclearity_bruteforce(cube, cube, max_product_dim=9)


@pytest.mark.tensorcone
class TestCertificates:
    """Exact replay of separation certificates."""

    def test_round_trip_through_document(self, square, square_certificate):
        restored = SeparationCertificate.from_dict(square_certificate.to_dict())
        assert restored == square_certificate
        assert verify_certificate(restored, square, square)

    def test_tampered_evidence_rejected(self, square, square_certificate):
        doc = square_certificate.to_dict()
        doc["min_evidence"][0]["value"] = "-1/1"
        assert not verify_certificate(SeparationCertificate.from_dict(doc), square, square)

    def test_tampered_value_rejected(self, square, square_certificate):
        doc = square_certificate.to_dict()
        doc["separation_value"] = "-1000/1"
        assert not verify_certificate(SeparationCertificate.from_dict(doc), square, square)

    def test_wrong_cones(self, square, diamond, square_certificate):
        assert not verify_certificate(square_certificate, diamond, diamond)

    def test_certify_rejects_invalid_pair(self, square):
        z = tensor_product(square.generators[0], square.generators[0])
        with pytest.raises(CertificateError):
            certify(square, square, z, z)

    def test_malformed_document(self):
        with pytest.raises(CertificateError):
            SeparationCertificate.from_dict({"witness": [[1]]})

    def test_lorentz_right_factor(self, diamond):
        cone = LorentzCone(n=2)
        witness = TensorElement(H_INV)
        cert = build_certificate(diamond, cone, witness, witness)
        assert cert.right_factor == RightFactor.LORENTZ
        assert all(isinstance(e, EvidenceEntry) and e.right == "lorentz" for e in cert.max_evidence)

    def test_float_left_factor_unsupported(self, disk, square):
        z = TensorElement([[0] * 3] * 3)
        with pytest.raises(UnsupportedConeError):
            build_certificate(disk, square, z, z)
