"""JSON wire format for fields, elements, matrices and verification reports.

Rationals always travel as "p/q" strings, finite-field residues included.
"""
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ValidationError, field_validator

from src.core.errors import CodecError, GaloisCpmError
from src.core.exact_fields import FieldContext, FieldElement, field_context
from src.core.mat_category import Matrix


def format_rational(value) -> str:
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: Union[str, int]) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as parseError:
        raise CodecError(f"not an exact rational: {text!r} ({parseError})")


class FieldSpecModel(BaseModel):
    kind: str
    n: Optional[int] = None
    d: Optional[int] = None
    p: Optional[int] = None
    m: Optional[int] = None

    def to_context(self) -> FieldContext:
        try:
            return field_context(self.model_dump(exclude_none=True))
        except (KeyError, TypeError) as missing:
            raise CodecError(f"incomplete field spec {self.model_dump(exclude_none=True)}: {missing}")


class FieldElementModel(BaseModel):
    field: FieldSpecModel
    coords: List[str]

    @field_validator("coords", mode="before")
    @classmethod
    def stringify(cls, value):
        return [str(c) for c in value]


class MatrixModel(BaseModel):
    rows: int
    cols: int
    field: FieldSpecModel
    entries: List[List[Union[List[str], FieldElementModel]]]

    @field_validator("entries", mode="before")
    @classmethod
    def stringify(cls, value):
        return [[[str(c) for c in e] if isinstance(e, list) else e for e in row] for row in value]


class VerificationReport(BaseModel):
    suite: str
    casesRun: int
    failures: List[Dict[str, Any]]
    seed: int
    elapsedSeconds: float

    @property
    def passed(self) -> bool:
        return not self.failures


# ---------------------------------------------------------
# Encoding
# ---------------------------------------------------------

def encode_coords(a: FieldElement) -> List[str]:
    return [format_rational(c) for c in a.coords]


def encode_element(a: FieldElement) -> Dict[str, Any]:
    return {"field": a.context.spec(), "coords": encode_coords(a)}


def encode_matrix(M: Matrix) -> Dict[str, Any]:
    return {
        "rows": M.rows,
        "cols": M.cols,
        "field": M.context.spec(),
        "entries": [[encode_element(a) for a in row] for row in M.entries],
    }


def dumps(payload: Dict[str, Any]) -> str:
    """Deterministic JSON text"""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------
# Decoding
# ---------------------------------------------------------

def _element_from_coords(context: FieldContext, coords: List[str]) -> FieldElement:
    if len(coords) != context.degree:
        raise CodecError(f"{context} needs {context.degree} coordinates, got {len(coords)}")
    try:
        return context.element([parse_rational(c) for c in coords])
    except GaloisCpmError:
        raise
    except (ValueError, ZeroDivisionError) as badValue:
        raise CodecError(str(badValue))


def decode_element(payload: Dict[str, Any]) -> FieldElement:
    try:
        model = FieldElementModel.model_validate(payload)
    except ValidationError as invalid:
        raise CodecError(f"invalid element payload: {invalid.error_count()} errors")
    return _element_from_coords(model.field.to_context(), model.coords)


def decode_matrix(payload: Dict[str, Any]) -> Matrix:
    try:
        model = MatrixModel.model_validate(payload)
    except ValidationError as invalid:
        raise CodecError(f"invalid matrix payload: {invalid.error_count()} errors")
    context = model.field.to_context()
    if len(model.entries) != model.rows or any(len(row) != model.cols for row in model.entries):
        raise CodecError(f"entries do not form a {model.rows}x{model.cols} grid")
    rows = []
    for row in model.entries:
        converted = []
        for entry in row:
            if isinstance(entry, FieldElementModel):
                if entry.field.to_context() != context:
                    raise CodecError("entry field differs from the matrix field")
                converted.append(_element_from_coords(context, entry.coords))
            else:
                converted.append(_element_from_coords(context, entry))
        rows.append(converted)
    return Matrix(context, rows, cols=model.cols)


def loads_matrix(text: str) -> Matrix:
    try:
        return decode_matrix(json.loads(text))
    except json.JSONDecodeError as badJson:
        raise CodecError(f"matrix file is not JSON: {badJson}")
