"""Minimal and maximal tensor products of polyhedral cones and their membership oracles."""
import logging
from fractions import Fraction
from typing import Any, List, Sequence


from cones.models import Cone, as_polyhedral
from cones.operations import extreme_rays, facet_functionals
from exactnum.linalg import as_exact, matmul
from exactnum.lp import conic_combination
from utils.exceptions import CertificateError, DimensionMismatchError, MixedScalarError

from .models import EvidenceEntry, MaxMembershipResult, MinMembershipResult, TensorElement

logger = logging.getLogger(__name__)


def tensor_product(x: Sequence, y: Sequence) -> TensorElement:
    return TensorElement.product(x, y)


def pair_functional(f: TensorElement, z: TensorElement):
    return f.pair(z)


def apply_local_maps(a: Any, b: Any, z: TensorElement) -> TensorElement:
    """(A (x) B) z, whose coefficient matrix is A Z B^T."""
    a = as_exact(a)
    b = as_exact(b)
    if a.shape[1] != z.shape[0] or b.shape[1] != z.shape[1]:
        raise DimensionMismatchError((a.shape[1], b.shape[1]), z.shape, "local maps on tensor")
    return TensorElement(matmul(matmul(a, z.matrix), b.T))


def pullback_functional(a: Any, b: Any, f: TensorElement) -> TensorElement:
    """Adjoint action on functionals: <F, A Z B^T> = <A^T F B, Z>."""
    a = as_exact(a)
    b = as_exact(b)
    if a.shape[0] != f.shape[0] or b.shape[0] != f.shape[1]:
        raise DimensionMismatchError((a.shape[0], b.shape[0]), f.shape, "local maps on functional")
    return TensorElement(matmul(matmul(a.T, f.matrix), b))


def bilinear_value(f: Sequence, z: TensorElement, g: Sequence) -> Fraction:
    """(f (x) g)(z) = f^T Z g."""
    m = z.matrix
    total = Fraction(0)
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        row = m[i]
        total += fi * sum((row[j] * gj for j, gj in enumerate(g) if gj != 0), Fraction(0))
    return total


def _check_shape(c1: Cone, c2: Cone, z: TensorElement) -> None:
    if z.shape != (c1.dim, c2.dim):
        raise DimensionMismatchError((c1.dim, c2.dim), z.shape, "tensor shape for cone pair")


def min_tensor_generators(c1: Cone, c2: Cone) -> List[TensorElement]:
    """All products of extreme rays, left index major."""
    rays1 = extreme_rays(as_polyhedral(c1))
    rays2 = extreme_rays(as_polyhedral(c2))
    return [TensorElement.product(x, y) for x in rays1 for y in rays2]


def max_membership(c1: Cone, c2: Cone, z: TensorElement) -> MaxMembershipResult:
    """Evaluate (f (x) g)(z) over every pair of dual extreme rays."""
    _check_shape(c1, c2, z)
    if not z.exact:
        raise MixedScalarError("max_membership needs an exact tensor")
    duals1 = facet_functionals(as_polyhedral(c1))
    duals2 = facet_functionals(as_polyhedral(c2))
    evidence = []
    violation = None
    for i, f in enumerate(duals1):
        for j, g in enumerate(duals2):
            value = bilinear_value(f, z, g)
            entry = EvidenceEntry(left=i, right=j, value=value)
            evidence.append(entry)
            if value < 0 and violation is None:
                violation = entry
    return MaxMembershipResult(member=violation is None, evidence=tuple(evidence), violation=violation)


def min_membership(c1: Cone, c2: Cone, z: TensorElement) -> MinMembershipResult:
    """LP over the product generators; Outside comes with a verified separating functional."""
    _check_shape(c1, c2, z)
    if not z.exact:
        raise MixedScalarError("min_membership needs an exact tensor")
    rays1 = extreme_rays(as_polyhedral(c1))
    rays2 = extreme_rays(as_polyhedral(c2))
    pairs = [(i, j) for i in range(len(rays1)) for j in range(len(rays2))]
    generators = [TensorElement.product(rays1[i], rays2[j]) for i, j in pairs]
    outcome = conic_combination([g.vec() for g in generators], z.vec())

    if outcome.is_optimal:
        decomposition = tuple((pairs[k], c) for k, c in enumerate(outcome.x) if c != 0)
        return MinMembershipResult(inside=True, decomposition=decomposition)

    y = outcome.farkas
    scale = sum((a * b for a, b in zip(y, z.vec())), Fraction(0))
    functional = TensorElement.from_vec([-v / scale for v in y], z.shape)
    value = functional.pair(z)
    if value >= 0 or any(functional.pair(g) < 0 for g in generators):
        raise CertificateError("Farkas functional failed its exact check")
    logger.debug(f"min_membership: Outside, separation value {value}")
    return MinMembershipResult(inside=False, functional=functional, value=value)
