"""Certificates for (C, L_n) from a user-supplied ice-cream frame L_n <= T(C) <= L_n(r)."""
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence

import numpy as np

from cones.models import Cone, LorentzCone, as_polyhedral, is_polyhedral
from cones.operations import extreme_rays, facet_functionals
from exactnum.linalg import as_exact, inverse, is_invertible, matmul
from exactnum.rational import format_rational, parse_rational
from tensorcone.certificates import certify
from tensorcone.models import SeparationCertificate, TensorElement
from utils.exceptions import CertificateError, DimensionMismatchError, ParameterRangeError, UnsupportedConeError

logger = logging.getLogger(__name__)


def lorentz_slack(v: Sequence[Fraction], r: Fraction = Fraction(1)) -> Fraction:
    """r^2 t^2 - |x|^2 for v = (x, t) with t >= 0, else t; nonnegative iff v lies in L_n(r)."""
    *head, t = v
    if t < 0:
        return t
    return r * r * t * t - sum((x * x for x in head), Fraction(0))


def ice_cream_frame_slacks(c: Cone, frame: Any, r: Any) -> Dict[str, List[Fraction]]:
    """Exact slacks of both inclusions: dual rays of T(C) in L_n and generators of T(C) in L_n(r)."""
    t = as_exact(frame)
    r = parse_rational(r)
    duals = [matmul(inverse(t).T, np.array(h, dtype=object)) for h in facet_functionals(as_polyhedral(c))]
    gens = [matmul(t, np.array(g, dtype=object)) for g in extreme_rays(as_polyhedral(c))]
    return {
        "inner": [lorentz_slack(tuple(v)) for v in duals],
        "outer": [lorentz_slack(tuple(v), r) for v in gens],
    }


def certify_ice_cream_frame(c: Cone, frame: Any, r: Any) -> SeparationCertificate:
    """Certificate for (C, L_n) when L_n <= T(C) <= L_n(r) with r < n.

    Witness (T^-1 (x) Id)(sum_i e_i (x) e_i + e_{n+1} (x) e_{n+1}), functional
    (T^T (x) Id)(r u (x) u - sum_{i<=n} e_i (x) e_i); the separation value is r - n.
    """
    if not is_polyhedral(c):
        raise UnsupportedConeError(c.kind.value, "certify_ice_cream_frame")
    d = c.dim
    n = d - 1
    t = as_exact(frame)
    if t.shape != (d, d):
        raise DimensionMismatchError((d, d), t.shape, "ice-cream frame")
    if not is_invertible(t):
        raise ParameterRangeError("frame", "singular", "invertible matrices")
    r = parse_rational(r)
    if not 0 < r < n:
        raise ParameterRangeError("r", r, f"(0, {n})")

    slacks = ice_cream_frame_slacks(c, t, r)
    for side, values in slacks.items():
        bad = [i for i, v in enumerate(values) if v < 0]
        if bad:
            raise CertificateError(f"frame fails the {side} inclusion at ray(s) {bad}")

    base = np.array([[Fraction(-int(i == j)) for j in range(d)] for i in range(d)], dtype=object)
    base[n, n] = r
    witness = TensorElement(inverse(t))
    functional = TensorElement(matmul(t.T, base))
    step = {
        "step": "ice_cream_frame",
        "r": format_rational(r),
        "inner_min_slack": format_rational(min(slacks["inner"])),
        "outer_min_slack": format_rational(min(slacks["outer"])),
    }
    cert = certify(c, LorentzCone(n=n), witness, functional, proof_chain=[step])
    logger.info(f"ice-cream frame certificate: n={n}, r={r}, separation {cert.separation_value}")
    return cert
