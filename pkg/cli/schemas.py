from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter, ValidationError, field_validator

from exactnum.rational import parse_rational
from utils.exceptions import SchemaError

Rational = Union[str, int]


def _flatten(values: Any):
    for v in values:
        if isinstance(v, list):
            yield from _flatten(v)
        else:
            yield v


def _check_rationals(rows: Any) -> Any:
    for v in _flatten(rows):
        try:
            parse_rational(v)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValueError(f'{v!r} is not a rational number')
    return rows


class PolyhedralConeDoc(BaseModel):
    kind: Literal["polyhedral"]
    dim: Optional[int] = Field(None, ge=1)
    generators: List[List[Rational]] = Field(..., min_length=1)

    @field_validator('generators')
    def validate_generators(cls, v):
        lengths = {len(g) for g in v}
        if len(lengths) != 1:
            raise ValueError(f'generators have mixed lengths {sorted(lengths)}')
        return _check_rationals(v)


class LorentzConeDoc(BaseModel):
    kind: Literal["lorentz"]
    n: int = Field(..., ge=1)
    r: Union[Rational, float] = "1/1"


class PsdConeDoc(BaseModel):
    kind: Literal["psd"]
    n: int = Field(..., ge=1)


class ClassicalConeDoc(BaseModel):
    kind: Literal["classical"]
    n: int = Field(..., ge=1)


class PolygonConeDoc(BaseModel):
    kind: Literal["polygon"]
    vertices: List[List[Rational]] = Field(..., min_length=3)

    @field_validator('vertices')
    def validate_vertices(cls, v):
        if any(len(p) != 2 for p in v):
            raise ValueError('polygon vertices must be points in the plane')
        return _check_rationals(v)


ConeDoc = Annotated[
    Union[PolyhedralConeDoc, LorentzConeDoc, PsdConeDoc, ClassicalConeDoc, PolygonConeDoc],
    Field(discriminator="kind")
]


class TensorDoc(BaseModel):
    matrix: List[List[Rational]] = Field(..., min_length=1)

    @field_validator('matrix')
    def validate_matrix(cls, v):
        if len({len(row) for row in v}) != 1:
            raise ValueError('tensor rows have mixed lengths')
        return _check_rationals(v)


class PolytopeSpaceDoc(BaseModel):
    kind: Literal["polytope"]
    vertices: List[List[Rational]] = Field(..., min_length=2)

    @field_validator('vertices')
    def validate_vertices(cls, v):
        return _check_rationals(v)


class EuclideanSpaceDoc(BaseModel):
    kind: Literal["euclidean"]
    dim: int = Field(..., ge=1)


SpaceDoc = Annotated[Union[PolytopeSpaceDoc, EuclideanSpaceDoc], Field(discriminator="kind")]


class GptDoc(BaseModel):
    cone: ConeDoc
    unit: List[Rational]
    centre: Optional[List[Rational]] = None
    space: Optional[SpaceDoc] = None


class RobustnessDoc(BaseModel):
    """Two GPTs and a state of their maximal tensor product."""
    a: GptDoc
    b: GptDoc
    state: List[List[Rational]]

    @field_validator('state')
    def validate_state(cls, v):
        return _check_rationals(v)


class EvidenceDoc(BaseModel):
    left: int
    right: Union[int, str]
    value: Union[Rational, float]


class CertificateDoc(BaseModel):
    witness: List[List[Rational]]
    functional: List[List[Rational]]
    max_evidence: List[EvidenceDoc]
    min_evidence: List[EvidenceDoc]
    separation_value: Rational
    right_factor: Literal["polyhedral", "lorentz", "psd"] = "polyhedral"
    proof_chain: List[Dict[str, Any]] = []

    @field_validator('witness', 'functional')
    def validate_matrices(cls, v):
        return _check_rationals(v)


def _errors(e: ValidationError) -> List[str]:
    return [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]


def validate_document(adapter_type: Any, data: Any, path: str) -> Dict[str, Any]:
    """Validate against a schema and return the plain document, or raise SchemaError."""
    try:
        model = TypeAdapter(adapter_type).validate_python(data)
    except ValidationError as e:
        raise SchemaError(path, _errors(e)) from e
    return model.model_dump(exclude_none=True)
