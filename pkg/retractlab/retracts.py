"""Construction and verification of retracts between cones."""
import logging
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from cones.hermitian import rank_one_projector
from cones.models import Cone, LorentzCone, PolyhedralCone, PsdCone, as_polyhedral, is_polyhedral
from cones.operations import (Membership, dual_cone, extreme_rays, facet_functionals, facets, membership,
                             polygon_section)
from exactnum.linalg import as_exact, identity, matmul
from exactnum.lp import LpProblem, lp_solve
from exactnum.rational import is_exact
from utils.config import DEFAULT_RETRACT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL
from utils.exceptions import DimensionMismatchError, RetractError, UnsupportedConeError

from .models import RetractPair, RetractVerification

logger = logging.getLogger(__name__)


def _image(m: np.ndarray, v: Sequence) -> Tuple[Fraction, ...]:
    return tuple(matmul(m, np.array(list(v), dtype=object)))


def sample_extreme_rays(cone: Cone, samples: int, rng: np.random.Generator) -> List[Tuple[float, ...]]:
    """Random extreme rays of a Lorentz or PSD cone: boundary points (r u, 1) or rank-one projectors."""
    out = []
    if isinstance(cone, LorentzCone):
        r = float(cone.r)
        for _ in range(samples):
            u = rng.normal(size=cone.n)
            u /= np.linalg.norm(u)
            out.append(tuple(float(v) for v in r * u) + (1.0,))
    elif isinstance(cone, PsdCone):
        for _ in range(samples):
            psi = rng.normal(size=cone.n) + 1j * rng.normal(size=cone.n)
            out.append(tuple(float(v) for v in rank_one_projector(psi / np.linalg.norm(psi))))
    else:
        raise UnsupportedConeError(cone.kind.value, "extreme ray sampling")
    return out


def _contains(cone: Cone, v: Sequence, tol: float) -> bool:
    if is_polyhedral(cone):
        if is_exact(v):
            return membership(cone, v).status != Membership.OUTSIDE
        scale = tol * (1.0 + float(np.linalg.norm(np.array(v, dtype=float))))
        return all(sum(float(a) * float(b) for a, b in zip(f, v)) >= -scale for f in facet_functionals(cone))
    return membership(cone, v, tol).status != Membership.OUTSIDE


def _side(m: np.ndarray, source: Cone, target: Cone, name: str, samples: int, rng: np.random.Generator,
          tol: float, failures: List[str]) -> Tuple[Tuple[Any, ...], int]:
    """Images of the source's extreme rays (all of them, or a sample) and their membership in the target."""
    if is_polyhedral(source):
        rays = extreme_rays(source)
        images = [_image(m, g) for g in rays]
        sampled = 0
    else:
        rays = sample_extreme_rays(source, samples, rng)
        dense = np.array(m, dtype=float)
        images = [tuple(float(v) for v in dense @ np.array(g, dtype=float)) for g in rays]
        sampled = len(rays)
    for k, image in enumerate(images):
        if not _contains(target, image, tol):
            failures.append(f"{name} maps source ray {k} outside the target")
    return (tuple(images) if not sampled else ()), sampled


def check_retract(r: RetractPair, samples: int = DEFAULT_RETRACT_SAMPLES, seed: int = DEFAULT_SEED,
                  tol: float = DEFAULT_TOL) -> RetractVerification:
    """Evaluate phi . psi = Id exactly and both positivity conditions on extreme rays.

    Polyhedral sides are checked on every extreme ray; Lorentz and PSD sides on a
    seeded sample of extreme rays.
    """
    d, d_prime = r.source.dim, r.target.dim
    if r.phi.shape != (d_prime, d) or r.psi.shape != (d, d_prime):
        raise DimensionMismatchError(((d_prime, d), (d, d_prime)), (r.phi.shape, r.psi.shape), "retract maps")

    product = matmul(r.phi, r.psi)
    is_identity = all(product[i, j] == (1 if i == j else 0) for i in range(d_prime) for j in range(d_prime))
    failures: List[str] = []
    if not is_identity:
        failures.append("phi . psi is not the identity")

    rng = np.random.default_rng(seed)
    phi_images, phi_sampled = _side(r.phi, r.source, r.target, "phi", samples, rng, tol, failures)
    psi_images, psi_sampled = _side(r.psi, r.target, r.source, "psi", samples, rng, tol, failures)
    return RetractVerification(identity=is_identity, phi_images=phi_images, psi_images=psi_images,
                               failures=tuple(failures), sampled=phi_sampled + psi_sampled)


def verify_retract(r: RetractPair) -> bool:
    verification = check_retract(r)
    if not verification.ok:
        logger.info(f"retract {r.label or '(unlabelled)'} rejected: {'; '.join(verification.failures)}")
    return verification.ok


def make_retract(source: Cone, target: Cone, phi: Any, psi: Any, label: str = "",
                 samples: int = DEFAULT_RETRACT_SAMPLES, seed: int = DEFAULT_SEED) -> RetractPair:
    """Build a RetractPair and refuse to return it unless it verifies."""
    pair = RetractPair(source=source, target=target, phi=as_exact(phi), psi=as_exact(psi), label=label)
    verification = check_retract(pair, samples=samples, seed=seed)
    if not verification.ok:
        raise RetractError(f"{label or 'retract'} failed verification: {'; '.join(verification.failures)}")
    return RetractPair(source=source, target=target, phi=pair.phi, psi=pair.psi,
                       verification=verification, label=label)


def identity_retract(cone: Cone) -> RetractPair:
    return make_retract(cone, cone, identity(cone.dim), identity(cone.dim), label="identity")


def _min_lambda(rays: Sequence[Sequence[Fraction]], x: Sequence[Fraction], fz: Fraction,
                projected: Sequence[Fraction]) -> Fraction:
    """Least lam >= 0 with projected + lam * fz * x in cone(rays)."""
    n = len(rays)
    dim = len(x)
    a_eq = [[r[i] for r in rays] + [-fz * x[i]] for i in range(dim)]
    objective = [Fraction(0)] * n + [Fraction(1)]
    outcome = lp_solve(LpProblem.from_arrays(objective, a_eq, projected))
    if not outcome.is_optimal:
        raise RetractError(f"lambda search is {outcome.status.value} for a facet generator")
    return outcome.objective_value


def facet_retract(c: Cone, facet_index: int) -> Tuple[RetractPair, Fraction, Tuple[Fraction, ...], int]:
    """Retract of a polyhedral cone onto one of its facets, in the coordinates of R^(d-1).

    With f the facet functional, p a pivot with f_p != 0 and P the coordinate projection
    dropping p: psi embeds R^(d-1) as ker f, and phi(z) = P z + lam f(z) P x where x is the
    sum of the facet's rays and lam exceeds every generator's least admissible value.
    Returns the pair with lam, x and the pivot.
    """
    if not is_polyhedral(c):
        raise UnsupportedConeError(c.kind.value, "facet_retract")
    poly = as_polyhedral(c)
    facet_list = facets(poly)
    if not 0 <= facet_index < len(facet_list):
        raise RetractError(f"facet index {facet_index} out of range (cone has {len(facet_list)} facets)")
    facet = facet_list[facet_index]
    f = facet.functional
    d = poly.dim
    pivot = next(i for i in range(d) if f[i] != 0)
    kept = [i for i in range(d) if i != pivot]

    proj = as_exact([[1 if j == i else 0 for j in range(d)] for i in kept])
    psi = as_exact([[(1 if i == j else 0) if i != pivot else -Fraction(f[j]) / f[pivot] for j in kept]
                    for i in range(d)])
    x = tuple(sum((r[i] for r in facet.rays), Fraction(0)) for i in range(d))

    # pi = psi . P projects onto ker f along e_pivot
    pi = matmul(psi, proj)
    lam0 = Fraction(0)
    for g in extreme_rays(poly):
        fz = sum((a * b for a, b in zip(f, g)), Fraction(0))
        if fz == 0:
            continue
        lam0 = max(lam0, _min_lambda(facet.rays, x, fz, _image(pi, g)))
    lam = lam0 + 1

    px = matmul(proj, np.array(x, dtype=object))
    phi = proj + np.outer(px * lam, np.array(f, dtype=object))
    target = PolyhedralCone(dim=d - 1, generators=tuple(_image(proj, r) for r in facet.rays))
    pair = make_retract(poly, target, phi, psi, label=f"facet {facet_index}")
    logger.debug(f"facet_retract: facet {facet_index}, pivot {pivot}, lambda {lam}")
    return pair, lam, x, pivot


def dualize_retract(r: RetractPair, source: Optional[Cone] = None, target: Optional[Cone] = None) -> RetractPair:
    """(psi^T, phi^T) between the dual cones; explicit duals may be passed in."""
    dual_source = source if source is not None else dual_cone(r.source)
    dual_target = target if target is not None else dual_cone(r.target)
    return make_retract(dual_source, dual_target, r.psi.T, r.phi.T, label=f"dual of {r.label}".strip())


def compose_retracts(first: RetractPair, second: RetractPair) -> RetractPair:
    """C -> C' -> C'': phi = phi2 phi1, psi = psi1 psi2."""
    if first.target.dim != second.source.dim:
        raise DimensionMismatchError(first.target.dim, second.source.dim, "retract composition")
    return make_retract(first.source, second.target, matmul(second.phi, first.phi), matmul(first.psi, second.psi),
                        label=f"{first.label} > {second.label}")


def section_retract(c: Cone) -> RetractPair:
    """Isomorphism of a 3-D polyhedral cone with the cone over its polygon section."""
    section = polygon_section(c)
    return make_retract(c, section.polygon_cone, section.to_polygon, section.from_polygon, label="polygon section")
