"""Pydantic models for everything the toolkit serializes."""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class InvariantVector(BaseModel):
    n: int = Field(..., ge=0)
    u: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    l: int = Field(0, ge=0)  # noqa: E741
    r: int = Field(0, ge=0)
    lr: int = Field(..., ge=0)
    x: int = Field(..., ge=0)
    s: int = Field(..., ge=1)
    kappa: int
    inv_s3: int
    inv_s2: int
    inv_w3: int
    mu: int
    x_mod3: int = Field(..., ge=0, le=2)
    x_mod4: int = Field(..., ge=0, le=3)
    realizable: bool = True

    @field_validator("lr")
    @classmethod
    def lr_bounded(cls, v, info):
        n = info.data.get("n")
        if n is not None and v > n * (n - 1) // 2:
            raise ValueError("lr exceeds the number of chord pairs")
        return v

    def public(self) -> Dict[str, int]:
        """Flat export without the debug-only l / r split."""
        return self.model_dump(exclude={"l", "r"})


class BalanceEntry(BaseModel):
    chord: int = Field(..., ge=1)
    lr: int = Field(..., ge=0)
    rl: int = Field(..., ge=0)


class BalanceResponse(BaseModel):
    word: List[int]
    balanced: bool
    entries: List[BalanceEntry]


class FaceModel(BaseModel):
    degree: int = Field(..., ge=1)
    coherent: bool
    arcs: List[int]
    senses: List[int]
    chords: List[int]


class MapSummary(BaseModel):
    vertices: int = Field(..., ge=0)
    edges: int = Field(..., ge=0)
    faces: int = Field(..., ge=0)
    genus: int = Field(..., ge=0)
    face_degrees: List[int] = []
    realizable: bool


class MoveInstanceModel(BaseModel):
    kind: str
    label: str
    site: List[int]
    result: List[int]


class SearchResult(BaseModel):
    status: str
    source: List[int]
    target: List[int]
    kinds: List[str]
    path: Optional[List[MoveInstanceModel]] = None
    certificate: Dict[str, List[int]] = {}
    states: int = 0
    depth: int = 0

    @field_validator("status")
    @classmethod
    def status_known(cls, v):
        if v not in ("found", "separated", "exhausted", "unreachable"):
            raise ValueError(f"unknown search status {v!r}")
        return v


class CurveClass(BaseModel):
    key: List[int]
    n: int = Field(..., ge=0)
    name: str
    prime: bool
    reduced: bool
    trivial: bool = False
    best_effort: bool = False
    invariants: InvariantVector


class MoveLine(BaseModel):
    """Two classes one move apart, up to 1-gon moves."""

    move: str
    source: str
    target: str
    source_key: List[int]
    target_key: List[int]
    certificate: Dict[str, List[int]] = {}


class CorpusFile(BaseModel):
    max_n: int
    prime: bool
    reduced: bool
    strategy: str
    classes: List[CurveClass]


class ErrorPayload(BaseModel):
    error: str
    message: str
    detail: Dict = {}
