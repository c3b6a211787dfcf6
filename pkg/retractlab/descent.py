import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from cones.models import Cone, as_polyhedral, is_polyhedral
from cones.operations import dual_cone, facets, is_classical
from utils.exceptions import ClassicalConeError, RetractError, UnsupportedConeError

from .models import DescentStep, DescentTrace, RetractPair, StepKind
from .retracts import compose_retracts, dualize_retract, facet_retract, identity_retract

logger = logging.getLogger(__name__)


def _non_classical_facet(cone: Cone) -> Optional[Tuple[int, RetractPair, Fraction, tuple, int]]:
    """Retract onto the first facet (index order) with more extreme rays than its dimension."""
    for index, facet in enumerate(facets(cone)):
        if len(facet.rays) > cone.dim - 1:
            pair, lam, x, pivot = facet_retract(cone, index)
            return index, pair, lam, x, pivot
    return None


def descend_to_3d(c: Cone, position: str = "input") -> DescentTrace:
    """Chain of facet retracts from a non-classical polyhedral cone down to dimension 3.

    Primal facets are tried first; when every facet is classical the descent retracts the
    dual cone onto one of its facets and dualizes the pair back.
    """
    if not is_polyhedral(c):
        raise UnsupportedConeError(c.kind.value, "descend_to_3d")
    verdict = is_classical(c)
    if verdict.classical:
        raise ClassicalConeError(position, basis=verdict.basis)

    current = c
    steps: List[DescentStep] = []
    composed = identity_retract(c)
    while current.dim > 3:
        found = _non_classical_facet(current)
        kind = StepKind.FACET
        if found is not None:
            index, pair, lam, x, pivot = found
        else:
            dual = dual_cone(as_polyhedral(current))
            found = _non_classical_facet(dual)
            if found is None:
                raise RetractError(f"no non-classical facet in dimension {current.dim} on either side")
            index, dual_pair, lam, x, pivot = found
            kind = StepKind.DUAL_FACET
            pair = dualize_retract(dual_pair, source=current)
        logger.info(f"descent: {kind.value} {index} from dimension {current.dim} (lambda {lam})")
        steps.append(DescentStep(kind=kind, facet_index=index, lam=lam, interior_point=tuple(x),
                                 pivot=pivot, retract=pair))
        composed = compose_retracts(composed, pair)
        current = pair.target

    if is_classical(current).classical:
        raise RetractError("descent reached a classical cone")
    return DescentTrace(steps=tuple(steps), final_cone=current, composed=composed)
