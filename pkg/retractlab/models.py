from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cones.models import Cone
from exactnum.rational import format_matrix, format_rational


@dataclass(frozen=True)
class RetractVerification:
    """Exact record of the retract conditions."""
    identity: bool
    phi_images: Tuple[Tuple[Fraction, ...], ...] = ()
    psi_images: Tuple[Tuple[Fraction, ...], ...] = ()
    failures: Tuple[str, ...] = ()
    sampled: int = 0

    @property
    def ok(self) -> bool:
        return self.identity and not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {"identity": self.identity, "ok": self.ok, "sampled": self.sampled, "failures": list(self.failures)}


@dataclass(frozen=True)
class RetractPair:
    """Positive maps phi: C -> C' and psi: C' -> C with phi . psi = Id."""
    source: Cone
    target: Cone
    phi: np.ndarray = field(repr=False)
    psi: np.ndarray = field(repr=False)
    verification: Optional[RetractVerification] = field(default=None, compare=False)
    label: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "source_dim": self.source.dim,
            "target_dim": self.target.dim,
            "phi": format_matrix(self.phi),
            "psi": format_matrix(self.psi),
            "verification": self.verification.to_dict() if self.verification else None,
        }


class StepKind(str, Enum):
    FACET = "facet_retract"
    DUAL_FACET = "dual_facet_retract"


@dataclass(frozen=True)
class DescentStep:
    kind: StepKind
    facet_index: int
    lam: Fraction
    interior_point: Tuple[Fraction, ...]
    pivot: int
    retract: RetractPair = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "facet_index": self.facet_index,
            "lambda": format_rational(self.lam),
            "interior_point": [format_rational(v) for v in self.interior_point],
            "pivot": self.pivot,
            "retract": self.retract.to_dict(),
        }


@dataclass(frozen=True)
class DescentTrace:
    """Steps from the original cone down to a non-classical 3-dimensional retract."""
    steps: Tuple[DescentStep, ...]
    final_cone: Cone
    composed: RetractPair

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "final_cone": self.final_cone.to_dict(),
            "composed": self.composed.to_dict(),
        }

    def summary(self) -> List[Dict[str, Any]]:
        return [{"kind": s.kind.value, "facet_index": s.facet_index, "lambda": format_rational(s.lam),
                 "target_dim": s.retract.target.dim} for s in self.steps]
