"""
Pydantic models for every JSON payload the CLI reads or writes.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict


class ComplexPayload(BaseModel):
    model_config = ConfigDict(extra="ignore")

    vertices: List[str]
    facets: List[List[int]]


class MorseComplexPayload(ComplexPayload):
    vertex_pairs: List[List[str]]
    notation: Optional[List[str]] = None


class ElementPayload(BaseModel):
    label: str
    rank: int


class PosetPayload(BaseModel):
    model_config = ConfigDict(extra="ignore")

    elements: List[ElementPayload]
    covers: List[List[str]]


class CollapseStep(BaseModel):
    removed: str
    witness: str


class CorePayload(ComplexPayload):
    """Final complex of a collapse run, with the steps that produced it."""

    steps: List[CollapseStep]


class CollapsibilityPayload(BaseModel):
    strongly_collapsible: bool
    minimal: bool
    core_size: int
    steps: List[CollapseStep]


class BettiPayload(BaseModel):
    betti: List[int]
    coeff: str
    euler: int
    torsion: Dict[str, List[int]] = {}
    note: str = "Betti numbers are a necessary condition for a homotopy type, not a certificate"


class GroupPayload(BaseModel):
    order: int
    generators: List[List[int]]
    vertices: List[str]


class ProductReport(BaseModel):
    order_union: int
    order_product: int
    aut_first: int
    aut_second: int
    exception: bool
    exception_subcomplexes: Optional[List[List[str]]] = None
    search_bound: int
    predicted_equal: bool
    observed_equal: bool
    passes: bool


class Algorithm1Report(BaseModel):
    heuristic: bool
    pattern: Optional[str] = None
    subposet: Optional[PosetPayload] = None
    exact: Optional[bool] = None
    subposets_scanned: int
    note: str = "True means a subposet matched a collapsible catalog pattern; false means no pattern was found"


class CheckReport(BaseModel):
    check: str
    passed: bool
    details: Dict[str, Any] = {}


class ErrorPayload(BaseModel):
    error: str
    kind: str
