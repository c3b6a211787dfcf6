from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from exactnum.linalg import as_exact
from exactnum.rational import format_matrix, format_rational, is_exact, parse_matrix, parse_rational
from utils.exceptions import CertificateError, DimensionMismatchError, MixedScalarError

Scalar = Union[Fraction, float]


class TensorElement:
    """Element of V1 (x) V2 as a d1 x d2 coefficient matrix, Z[i][j] = coefficient of e_i (x) e_j.

    Products follow (x (x) y)[i][j] = x_i y_j and functionals act by the trace pairing
    <F, Z> = sum_ij F[i][j] Z[i][j].
    """

    __slots__ = ('_matrix', '_exact')

    def __init__(self, matrix: Any):
        arr = np.array(matrix, dtype=object)
        if arr.ndim != 2:
            raise DimensionMismatchError("2-D coefficient matrix", arr.shape, "TensorElement")
        exact = is_exact(arr) if arr.size else True
        if exact:
            arr = as_exact(arr)
        else:
            if any(isinstance(v, Fraction) for v in arr.flat):
                raise MixedScalarError()
            arr = np.array(arr, dtype=float)
        arr.setflags(write=False)
        self._matrix = arr
        self._exact = exact

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def shape(self) -> Tuple[int, int]:
        return self._matrix.shape

    @classmethod
    def product(cls, x: Sequence, y: Sequence) -> 'TensorElement':
        if is_exact(x) and is_exact(y):
            xs = [parse_rational(v) for v in x]
            ys = [parse_rational(v) for v in y]
            return cls([[a * b for b in ys] for a in xs])
        return cls(np.outer(np.array(x, dtype=float), np.array(y, dtype=float)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> 'TensorElement':
        return cls(parse_matrix(rows))

    def vec(self) -> Tuple[Any, ...]:
        """Row-major flattening: index i * d2 + j."""
        return tuple(self._matrix.flat)

    @classmethod
    def from_vec(cls, values: Sequence[Any], shape: Tuple[int, int]) -> 'TensorElement':
        if len(values) != shape[0] * shape[1]:
            raise DimensionMismatchError(shape[0] * shape[1], len(values), "flattened tensor")
        return cls(np.array(list(values), dtype=object).reshape(shape))

    def pair(self, other: 'TensorElement') -> Scalar:
        if self.shape != other.shape:
            raise DimensionMismatchError(self.shape, other.shape, "trace pairing")
        zero = Fraction(0) if self.exact and other.exact else 0.0
        return sum((a * b for a, b in zip(self._matrix.flat, other._matrix.flat)), zero)

    def transpose(self) -> 'TensorElement':
        return TensorElement(self._matrix.T)

    def scaled(self, factor: Any) -> 'TensorElement':
        return TensorElement(self._matrix * factor)

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        if self.shape != other.shape:
            raise DimensionMismatchError(self.shape, other.shape, "tensor addition")
        return TensorElement(self._matrix + other._matrix)

    def __neg__(self) -> 'TensorElement':
        return TensorElement(-self._matrix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement) or self.shape != other.shape:
            return False
        return all(a == b for a, b in zip(self._matrix.flat, other._matrix.flat))

    def __hash__(self):
        return hash((self.shape, self.vec()))

    def __repr__(self) -> str:
        return f"TensorElement({self.to_dict()['matrix']})"

    def to_dict(self) -> Dict[str, Any]:
        if self.exact:
            return {"matrix": format_matrix(self._matrix)}
        return {"matrix": [[float(v) for v in row] for row in self._matrix]}

    @classmethod
    def from_dict(cls, data: Any) -> 'TensorElement':
        rows = data["matrix"] if isinstance(data, dict) else data
        if rows and all(isinstance(v, float) for row in rows for v in row):
            return cls(np.array(rows, dtype=float))
        return cls.from_rows(rows)


class RightFactor(str, Enum):
    POLYHEDRAL = "polyhedral"
    LORENTZ = "lorentz"
    PSD = "psd"


@dataclass(frozen=True)
class EvidenceEntry:
    """One evaluated pair: indices into the left and right generator (or dual ray) lists."""
    left: int
    right: Union[int, str]
    value: Scalar

    def to_dict(self) -> Dict[str, Any]:
        value = format_rational(self.value) if isinstance(self.value, Fraction) else float(self.value)
        return {"left": self.left, "right": self.right, "value": value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EvidenceEntry':
        value = data["value"]
        value = float(value) if isinstance(value, float) else parse_rational(value)
        return cls(left=int(data["left"]), right=data["right"], value=value)


@dataclass(frozen=True)
class SeparationCertificate:
    """Witness z in the maximal product, functional f nonnegative on the minimal product, f(z) < 0."""
    witness: TensorElement
    functional: TensorElement
    max_evidence: Tuple[EvidenceEntry, ...]
    min_evidence: Tuple[EvidenceEntry, ...]
    separation_value: Fraction
    right_factor: RightFactor = RightFactor.POLYHEDRAL
    proof_chain: Tuple[Dict[str, Any], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.witness.exact or not self.functional.exact:
            raise CertificateError("witness and functional must be exact")
        if self.witness.shape != self.functional.shape:
            raise CertificateError(f"witness shape {self.witness.shape} != functional shape {self.functional.shape}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.witness.shape

    def with_chain(self, *steps: Dict[str, Any]) -> 'SeparationCertificate':
        return SeparationCertificate(
            witness=self.witness,
            functional=self.functional,
            max_evidence=self.max_evidence,
            min_evidence=self.min_evidence,
            separation_value=self.separation_value,
            right_factor=self.right_factor,
            proof_chain=tuple(self.proof_chain) + tuple(steps)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "witness": self.witness.to_dict()["matrix"],
            "functional": self.functional.to_dict()["matrix"],
            "max_evidence": [e.to_dict() for e in self.max_evidence],
            "min_evidence": [e.to_dict() for e in self.min_evidence],
            "separation_value": format_rational(self.separation_value),
            "right_factor": self.right_factor.value,
            "proof_chain": list(self.proof_chain),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SeparationCertificate':
        try:
            return cls(
                witness=TensorElement.from_rows(data["witness"]),
                functional=TensorElement.from_rows(data["functional"]),
                max_evidence=tuple(EvidenceEntry.from_dict(e) for e in data["max_evidence"]),
                min_evidence=tuple(EvidenceEntry.from_dict(e) for e in data["min_evidence"]),
                separation_value=parse_rational(data["separation_value"]),
                right_factor=RightFactor(data.get("right_factor", RightFactor.POLYHEDRAL.value)),
                proof_chain=tuple(data.get("proof_chain", ()))
            )
        except (KeyError, ValueError, TypeError) as e:
            raise CertificateError(f"malformed certificate document: {e}") from e


@dataclass(frozen=True)
class MaxMembershipResult:
    member: bool
    evidence: Tuple[EvidenceEntry, ...]
    violation: Optional[EvidenceEntry] = None


@dataclass(frozen=True)
class MinMembershipResult:
    """Inside with a decomposition over (i, j) generator pairs, or Outside with a functional."""
    inside: bool
    decomposition: Tuple[Tuple[Tuple[int, int], Fraction], ...] = ()
    functional: Optional[TensorElement] = None
    value: Optional[Fraction] = None


class NuclearityVerdict(str, Enum):
    NUCLEAR = "nuclear"
    ENTANGLEABLE = "entangleable"


@dataclass(frozen=True)
class NuclearityResult:
    verdict: NuclearityVerdict
    certificate: Optional[SeparationCertificate] = None
    facet_count: int = 0

    @property
    def nuclear(self) -> bool:
        return self.verdict == NuclearityVerdict.NUCLEAR

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "facet_count": self.facet_count,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }
