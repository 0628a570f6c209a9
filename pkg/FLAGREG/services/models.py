"""Pydantic models."""
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, StrictFloat, StrictInt, conint


class Rational(BaseModel):
    num: int
    den: int


Value = Union[Rational, StrictInt, StrictFloat, None]


class BettiEntry(BaseModel):
    i: int
    j: int
    beta: int


class Hypothesis(BaseModel):
    name: str
    holds: bool


class BoundReportModel(BaseModel):
    name: str
    hypotheses_checked: List[Hypothesis]
    bound_value: Value
    observed_value: Value
    holds: bool
    asserted: bool
    violated: bool
    inconclusive: bool = False
    witness: Any = None
    details: Dict[str, Any] = {}


class VerdictModel(BaseModel):
    holds: bool
    witness: Any = None
    reason: Optional[str] = None


class ComplexSummary(BaseModel):
    n: int
    labels: List[str]
    dim: int
    krull_dim: Optional[int]
    f_vector: List[int]
    h_vector: List[int]


class FlagsReport(BaseModel):
    flag: Optional[VerdictModel]
    flag_no_square: Optional[VerdictModel]
    pseudomanifold: Optional[VerdictModel]
    parity_orientable: Optional[VerdictModel]
    orientable: Optional[bool]


class FieldReport(BaseModel):
    field: str
    reduced_betti: Optional[List[int]]
    betti_table: Optional[List[BettiEntry]]
    regularity: Optional[int]
    np: Optional[Dict[str, bool]]
    linear_strand_length: Optional[int]
    gorenstein: Optional[VerdictModel]
    gorenstein_star: Optional[VerdictModel]
    top_cycle: Optional[VerdictModel]


class AnalysisReport(BaseModel):
    complex: ComplexSummary
    flags: Optional[FlagsReport]
    systole: Optional[int]
    fields: Optional[List[FieldReport]]
    bounds: Optional[List[BoundReportModel]]
    notices: List[str] = []


class AnalyzeRequest(BaseModel):
    facets: Optional[str] = None
    generator: Optional[str] = None
    fields: List[str] = ['gf2']
    checks: List[str] = ['all']
    hochster_limit: Optional[conint(ge=0)] = None


class GenerateResponse(BaseModel):
    n: int
    labels: List[str]
    facets: List[List[str]]


class JsBoundsResponse(BaseModel):
    d: int
    recursion_value: Rational
    closed_form: Rational
    simplified: Rational


class BoundValueResponse(BaseModel):
    n: int
    p: int
    bound: Union[StrictInt, StrictFloat]


class Lemma3Request(BaseModel):
    k: conint(ge=3)
