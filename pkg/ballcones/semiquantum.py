"""Entanglement certificates for a polyhedral cone paired with a PSD cone."""
import logging
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from cones.hermitian import rank_one_projector
from cones.models import Cone, LorentzCone
from cones.operations import extreme_rays
from dim3lab.sandwich import sandwich
from dim3lab.witness import build_omega, chsh_functional, polygon_base
from exactnum.linalg import inverse, matmul
from exactnum.rational import format_rational
from retractlab.descent import descend_to_3d
from retractlab.lifting import lift_certificate
from tensorcone.certificates import certify
from tensorcone.models import SeparationCertificate, TensorElement
from utils.config import DEFAULT_PSD_SAMPLES, DEFAULT_RETRACT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL
from utils.exceptions import CertificateError, ParameterRangeError

from .retracts import psd_to_disk_retract

logger = logging.getLogger(__name__)

DISK_LEVEL_FLOOR = Fraction(3, 2)


def disk_level(image) -> Fraction:
    """CHSH level separating the polygon (inside the blunt square) from the unit disk.

    On a product (p, 1) (x) (q, 1) with |q| <= 1 the CHSH value is at most sqrt(2 |p|^2),
    and (s + 4) / 4 >= sqrt(s) for s = 2 max |p|^2 < 4.
    """
    s = 2 * max(x * x + y * y for (x, y) in image)
    return max(DISK_LEVEL_FLOOR, (s + 4) / 4)


def _disk_certificate(c3: Cone) -> SeparationCertificate:
    """Certificate for (C3, L_2): kite witness against the diamond kite, pulled back through the sandwich."""
    polygon, to_polygon, section_info = polygon_base(c3, "first")
    result = sandwich(polygon)
    level = disk_level(result.image)
    if level >= 2:
        raise CertificateError(f"disk level {level} is not below 2")
    omega = build_omega(result.kite.a, result.kite.b, 0, 0)
    base_functional = chsh_functional(level)
    value = base_functional.pair(omega)
    if value >= 0:
        raise CertificateError(f"disk witness is not separated (value {value})")

    t = matmul(result.affine_matrix(), to_polygon)
    witness = TensorElement(matmul(inverse(t), omega.matrix))
    functional = TensorElement(matmul(t.T, base_functional.matrix))
    steps = [
        {"step": "sandwich", "position": "first", **section_info, **result.to_dict()},
        {"step": "disk_witness", "level": format_rational(level), "value": format_rational(value)},
    ]
    return certify(c3, LorentzCone(n=2), witness, functional, proof_chain=steps)


def spot_check_functional(cert: SeparationCertificate, c: Cone, n: int, samples: int = DEFAULT_PSD_SAMPLES,
                          seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> Dict[str, Any]:
    """Evaluate the functional on random products g (x) |psi><psi| over the generators g of C."""
    rng = np.random.default_rng(seed)
    dense = np.array(cert.functional.matrix, dtype=float)
    contracted = [dense.T @ np.array(g, dtype=float) for g in extreme_rays(c)]
    worst = np.inf
    for _ in range(samples):
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        projector = np.array(rank_one_projector(psi / np.linalg.norm(psi)), dtype=float)
        worst = min(worst, min(float(w @ projector) for w in contracted))
    passed = bool(worst >= -tol)
    if not passed:
        logger.warning(f"rank-one spot check failed: minimum {worst:.3e}")
    return {"step": "rank_one_spot_check", "samples": samples, "seed": seed, "minimum": float(worst), "passed": passed}


def certify_entangleable_semiquantum(c: Cone, n: int, samples: int = DEFAULT_PSD_SAMPLES, seed: int = DEFAULT_SEED,
                                     retract_samples: int = DEFAULT_RETRACT_SAMPLES) -> SeparationCertificate:
    """Certificate that C (*min*) PSD_n differs from C (*max*) PSD_n for non-classical polyhedral C.

    C descends to a 3-D cone, PSD_n retracts onto the disk cone L_2, and the disk
    certificate is lifted through both retracts.
    """
    if n < 2:
        raise ParameterRangeError("n", n, "[2, inf)")
    trace = descend_to_3d(c, position="first")
    base = _disk_certificate(trace.final_cone)
    base = base.with_chain({"step": "descent", "first": trace.summary()})
    right = psd_to_disk_retract(n, samples=retract_samples, seed=seed)
    lifted = lift_certificate(base, trace.composed, right)
    check = spot_check_functional(lifted, c, n, samples, seed)
    if not check["passed"]:
        raise CertificateError(f"functional is negative on a sampled product ({check['minimum']:.3e})")
    logger.info(f"semiquantum certificate for dim {c.dim} and PSD_{n}: separation {lifted.separation_value}")
    return lifted.with_chain(check)
