"""Entanglement robustness over polyhedral pairs, its norm lower bound and local positive maps."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

import numpy as np

from cones.models import as_polyhedral
from cones.operations import Membership, extreme_rays, membership
from exactnum.linalg import as_exact, identity
from exactnum.lp import LpProblem, lp_solve
from exactnum.rational import format_rational, parse_rational
from tensorcone.models import TensorElement
from tensorcone.products import apply_local_maps, max_membership
from utils.config import DEFAULT_TOL
from utils.exceptions import NormError, RobustnessError

from .models import Gpt, SymmetricGpt
from .norms import injective_norm, projective_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RobustnessResult:
    """Optimal zeta with zeta and omega + zeta in the minimal product, and the LP's dual witness."""
    value: Fraction
    zeta: TensorElement
    witness: Optional[TensorElement] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": format_rational(self.value),
            "zeta": self.zeta.to_dict()["matrix"],
            "witness": self.witness.to_dict()["matrix"] if self.witness is not None else None,
        }


def entanglement_robustness(g1: Gpt, g2: Gpt, omega: TensorElement) -> RobustnessResult:
    """min (u1 (x) u2)(zeta) over zeta, omega + zeta in C1 (*min*) C2.

    One LP in the coefficients lam, mu of zeta = sum lam_k G_k and omega + zeta = sum mu_k G_k
    over the product generators G_k. The dual solution W is nonnegative on the minimal
    product and has -<W, omega> equal to the optimum.
    """
    c1, c2 = g1.cone, g2.cone
    if not omega.exact:
        raise RobustnessError("robustness needs an exact state")
    if not max_membership(c1, c2, omega).member:
        raise RobustnessError("state is not in the maximal tensor product")
    rays1 = extreme_rays(as_polyhedral(c1))
    rays2 = extreme_rays(as_polyhedral(c2))
    gens = [TensorElement.product(x, y) for x in rays1 for y in rays2]
    costs = [g1.unit_value(x) * g2.unit_value(y) for x in rays1 for y in rays2]
    vecs = [g.vec() for g in gens]
    target = omega.vec()
    k = len(gens)
    a_eq = [[-v[i] for v in vecs] + [v[i] for v in vecs] for i in range(len(target))]
    outcome = lp_solve(LpProblem.from_arrays(costs + [0] * k, a_eq, target))
    if not outcome.is_optimal:
        raise RobustnessError(f"robustness LP is {outcome.status.value}")
    lam = outcome.x[:k]
    zeta = np.full(omega.shape, Fraction(0), dtype=object)
    for coef, g in zip(lam, gens):
        if coef:
            zeta = zeta + g.matrix * coef
    witness = TensorElement.from_vec([-v for v in outcome.y], omega.shape)
    logger.debug(f"entanglement robustness {outcome.objective_value} ({sum(1 for c in lam if c)} zeta terms)")
    return RobustnessResult(value=outcome.objective_value, zeta=TensorElement(zeta), witness=witness)


def robustness_lower_bound(s1: SymmetricGpt, s2: SymmetricGpt, z: TensorElement) -> Any:
    """max(0, (pi(z) - 1) / 2) for eps(z) <= 1, a lower bound on the robustness of omega(z)."""
    eps = injective_norm(s1.space, s2.space, z)
    if eps > (1 if isinstance(eps, Fraction) else 1 + DEFAULT_TOL):
        raise NormError(f"injective norm {eps} exceeds 1")
    pi = projective_norm(s1.space, s2.space, z)
    bound = (pi - 1) / 2
    return bound if bound > 0 else (Fraction(0) if isinstance(bound, Fraction) else 0.0)


def local_positive_map(g: Gpt, p: Any, sigma: Sequence[Any]) -> np.ndarray:
    """Lambda(x) = p x + (1 - p) u(x) sigma: positive and unit preserving for p in [0, 1], sigma a state."""
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise RobustnessError(f"mixing weight {p} outside [0, 1]")
    sigma = as_exact(list(sigma))
    if g.unit_value(sigma) != 1 or membership(g.cone, tuple(sigma)).status == Membership.OUTSIDE:
        raise RobustnessError("sigma is not a normalized state")
    unit = np.array(g.unit, dtype=object)
    return identity(g.dim) * p + np.outer(sigma, unit) * (1 - p)


def apply_local_positive_maps(lam1: np.ndarray, lam2: np.ndarray, omega: TensorElement) -> TensorElement:
    return apply_local_maps(lam1, lam2, omega)
