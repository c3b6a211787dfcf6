"""Transport of separation certificates along retracts, and the polyhedral certification pipeline."""
import logging

from cones.models import Cone
from cones.operations import is_classical
from dim3lab.witness import entangle_3d
from exactnum.linalg import matmul
from tensorcone.certificates import certify
from tensorcone.models import SeparationCertificate, TensorElement
from utils.exceptions import CertificateError, ClassicalConeError, RetractError

from .descent import descend_to_3d
from .models import RetractPair
from .retracts import verify_retract

logger = logging.getLogger(__name__)


def lift_certificate(cert: SeparationCertificate, r1: RetractPair, r2: RetractPair) -> SeparationCertificate:
    """Certificate for (C1, C2) from one for their retracts (C1', C2').

    The witness moves by psi1 (x) psi2 and the functional by phi1^T (x) phi2^T; the
    separation value is unchanged because phi_k psi_k = Id.
    """
    for name, r in (("first", r1), ("second", r2)):
        if not verify_retract(r):
            raise RetractError(f"{name} retract does not verify")
    if cert.shape != (r1.target.dim, r2.target.dim):
        raise RetractError(f"certificate shape {cert.shape} does not match retract targets")

    witness = TensorElement(matmul(matmul(r1.psi, cert.witness.matrix), r2.psi.T))
    functional = TensorElement(matmul(matmul(r1.phi.T, cert.functional.matrix), r2.phi))
    steps = tuple(cert.proof_chain) + ({"step": "lift", "first": r1.label, "second": r2.label},)
    try:
        lifted = certify(r1.source, r2.source, witness, functional, proof_chain=steps)
    except CertificateError as e:
        raise RetractError(f"lifted certificate failed re-verification: {str(e)}") from e
    if lifted.separation_value != cert.separation_value:
        raise RetractError(f"separation value changed from {cert.separation_value} to {lifted.separation_value}")
    return lifted


def certify_entangleable_polyhedral(c1: Cone, c2: Cone) -> SeparationCertificate:
    """Separation certificate for any pair of non-classical polyhedral cones."""
    for position, cone in (("first", c1), ("second", c2)):
        verdict = is_classical(cone)
        if verdict.classical:
            raise ClassicalConeError(position, basis=verdict.basis)

    trace1 = descend_to_3d(c1, position="first")
    trace2 = descend_to_3d(c2, position="second")
    base = entangle_3d(trace1.final_cone, trace2.final_cone)
    base = base.with_chain({"step": "descent", "first": trace1.summary(), "second": trace2.summary()})
    lifted = lift_certificate(base, trace1.composed, trace2.composed)
    logger.info(f"certified entangleable pair of dimensions ({c1.dim}, {c2.dim}), "
                f"separation value {lifted.separation_value}")
    return lifted
