#src/report.py
from __future__ import annotations
from pydantic import BaseModel, Field
from typing import List, Optional, Dict, Any, Literal

Status = Literal["pass", "fail", "skipped"]


class ClaimReport(BaseModel):
    claim_id: str
    reference: str
    status: Status
    details: Dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class SuiteReport(BaseModel):
    scope: str
    n_min: int
    n_max: int
    seed: int
    claims: List[ClaimReport] = Field(default_factory=list)
    totals: Dict[str, int] = Field(default_factory=dict)

    def tally(self) -> "SuiteReport":
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.claims:
            counts[c.status] += 1
        self.totals = counts
        return self

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.claims)


class ShapeRecord(BaseModel):
    shape_id: str
    vertices: int
    leaves: int
    labeled: List[int]
    rank: int
    star_class: str
    twist_rank: int
    edges: List[List[int]] = Field(default_factory=list)
    base: Optional[int] = None
    automorphisms: Optional[int] = None


class MatrixRecord(BaseModel):
    automorphism: str
    matrix: List[List[int]]
    pgl_sign_normalized: List[List[int]]
