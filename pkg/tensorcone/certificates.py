"""Exact separation certificates: building, replaying and checking."""
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from cones.hermitian import min_eigenvalue_of_vector
from cones.models import Cone, LorentzCone, PsdCone, as_polyhedral, is_polyhedral
from cones.operations import extreme_rays, facet_functionals
from utils.config import DEFAULT_TOL
from utils.exceptions import CertificateError, DimensionMismatchError, UnsupportedConeError

from .models import EvidenceEntry, RightFactor, SeparationCertificate, TensorElement
from .products import bilinear_value

logger = logging.getLogger(__name__)

Evidence = Tuple[EvidenceEntry, ...]


def _contract_left(m: TensorElement, f: Sequence) -> List[Any]:
    """M^T f: the right-factor vector obtained by applying f to the left slot."""
    rows = m.matrix
    return [sum((f[i] * rows[i][j] for i in range(len(f)) if f[i] != 0), Fraction(0))
            for j in range(m.shape[1])]


def _lorentz_slack(v: Sequence, r: Any) -> Any:
    """Nonnegative iff v lies in L_n(r); exact when r is rational."""
    *head, t = v
    if isinstance(r, Fraction):
        if t < 0:
            return t
        return r * r * t * t - sum((x * x for x in head), Fraction(0))
    return float(r) * float(t) - math.sqrt(sum(float(x) ** 2 for x in head))


def _right_factor(c2: Cone) -> RightFactor:
    if is_polyhedral(c2):
        return RightFactor.POLYHEDRAL
    if isinstance(c2, LorentzCone):
        return RightFactor.LORENTZ
    if isinstance(c2, PsdCone):
        return RightFactor.PSD
    raise UnsupportedConeError(str(getattr(c2, 'kind', type(c2).__name__)), "certificate right factor")


def compute_evidence(c1: Cone, c2: Cone, witness: TensorElement,
                     functional: TensorElement, tol: float = DEFAULT_TOL) -> Tuple[Evidence, Evidence, RightFactor]:
    """Max-product evidence for the witness and min-product evidence for the functional.

    The left cone is polyhedral. A polyhedral right cone yields one exact entry per
    generator pair; for a Lorentz or PSD right cone each left ray is contracted and the
    resulting vector tested against the right cone (max side) or its dual (min side).
    """
    if not is_polyhedral(c1):
        raise UnsupportedConeError(c1.kind.value, "certificate left factor")
    expected = (c1.dim, c2.dim)
    if witness.shape != expected or functional.shape != expected:
        raise DimensionMismatchError(expected, (witness.shape, functional.shape), "certificate for cone pair")
    right = _right_factor(c2)
    duals1 = facet_functionals(as_polyhedral(c1))
    rays1 = extreme_rays(as_polyhedral(c1))

    if right == RightFactor.POLYHEDRAL:
        duals2 = facet_functionals(as_polyhedral(c2))
        rays2 = extreme_rays(as_polyhedral(c2))
        max_ev = tuple(EvidenceEntry(i, j, bilinear_value(f, witness, g))
                       for i, f in enumerate(duals1) for j, g in enumerate(duals2))
        min_ev = tuple(EvidenceEntry(i, j, bilinear_value(x, functional, y))
                       for i, x in enumerate(rays1) for j, y in enumerate(rays2))
        return max_ev, min_ev, right

    if right == RightFactor.LORENTZ:
        r = c2.r
        dual_r = (1 / r) if isinstance(r, Fraction) else 1.0 / r
        max_ev = tuple(EvidenceEntry(i, right.value, _lorentz_slack(_contract_left(witness, f), r))
                       for i, f in enumerate(duals1))
        min_ev = tuple(EvidenceEntry(i, right.value, _lorentz_slack(_contract_left(functional, x), dual_r))
                       for i, x in enumerate(rays1))
        return max_ev, min_ev, right

    max_ev = tuple(
        EvidenceEntry(i, right.value, min_eigenvalue_of_vector(_contract_left(witness, f), c2.n, tol=tol))
        for i, f in enumerate(duals1)
    )
    min_ev = tuple(
        EvidenceEntry(i, right.value,
                      min_eigenvalue_of_vector(_contract_left(functional, x), c2.n, functional=True, tol=tol))
        for i, x in enumerate(rays1)
    )
    return max_ev, min_ev, right


def _passes(value: Any, tol: float) -> bool:
    if isinstance(value, Fraction):
        return value >= 0
    return value >= -tol


def build_certificate(c1: Cone, c2: Cone, witness: TensorElement, functional: TensorElement,
                      proof_chain: Sequence[Dict[str, Any]] = (), tol: float = DEFAULT_TOL) -> SeparationCertificate:
    """Assemble a certificate from a witness and functional; no acceptance check."""
    if not witness.exact or not functional.exact:
        raise CertificateError("witness and functional must be exact")
    max_ev, min_ev, right = compute_evidence(c1, c2, witness, functional, tol)
    return SeparationCertificate(
        witness=witness,
        functional=functional,
        max_evidence=max_ev,
        min_evidence=min_ev,
        separation_value=functional.pair(witness),
        right_factor=right,
        proof_chain=tuple(proof_chain)
    )


def _same_value(stored: Any, fresh: Any, tol: float) -> bool:
    if isinstance(stored, Fraction) and isinstance(fresh, Fraction):
        return stored == fresh
    if isinstance(stored, Fraction) != isinstance(fresh, Fraction):
        return False
    return abs(float(stored) - float(fresh)) <= tol * (1.0 + abs(float(fresh)))


def _same_evidence(stored: Evidence, fresh: Evidence, tol: float) -> bool:
    if len(stored) != len(fresh):
        return False
    for s, f in zip(stored, fresh):
        if s.left != f.left or s.right != f.right or not _same_value(s.value, f.value, tol):
            return False
    return True


def verify_certificate(cert: SeparationCertificate, c1: Cone, c2: Cone, tol: float = DEFAULT_TOL) -> bool:
    """Replay every evidence value; true iff all match, all are nonnegative and f(z) < 0."""
    expected = (c1.dim, c2.dim)
    if cert.shape != expected:
        raise DimensionMismatchError(expected, cert.shape, "certificate for cone pair")
    max_ev, min_ev, right = compute_evidence(c1, c2, cert.witness, cert.functional, tol)
    value = cert.functional.pair(cert.witness)
    checks = {
        "right_factor": right == cert.right_factor,
        "separation_value": value == cert.separation_value and value < 0,
        "max_evidence_replay": _same_evidence(cert.max_evidence, max_ev, tol),
        "min_evidence_replay": _same_evidence(cert.min_evidence, min_ev, tol),
        "max_evidence_sign": all(_passes(e.value, tol) for e in max_ev),
        "min_evidence_sign": all(_passes(e.value, tol) for e in min_ev),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.info(f"certificate rejected: {', '.join(failed)}")
        return False
    return True


def certify(c1: Cone, c2: Cone, witness: TensorElement, functional: TensorElement,
            proof_chain: Sequence[Dict[str, Any]] = (), tol: float = DEFAULT_TOL) -> SeparationCertificate:
    """Build a certificate and insist that it verifies."""
    cert = build_certificate(c1, c2, witness, functional, proof_chain, tol)
    if not verify_certificate(cert, c1, c2, tol):
        raise CertificateError(f"assembled certificate does not verify (f(z) = {cert.separation_value})")
    return cert
