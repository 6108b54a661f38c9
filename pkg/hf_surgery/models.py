"""
Models - Pydantic models for run configuration and machine-readable reports.

Rationals are serialized as reduced "num/den" strings ("n" for integers).
"""

import os
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from .exactmath import format_rational
from .knots import name_of
from .lattice import DEFAULT_ORACLE_LIMIT, DInvariants
from .obstruct import Candidate, ConjectureRow, MatchReport
from .surgery import SurgeryD


class OutputFormat(str, Enum):
    """Output formats understood by every subcommand."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class RunConfig(BaseModel):
    """Settings shared by all subcommands; flags override the environment."""

    format: OutputFormat = Field(
        default=OutputFormat.TEXT, description="Output format"
    )
    cache_dir: Optional[str] = Field(
        default=None, description="Result cache directory (unset = no cache)"
    )
    workers: int = Field(default=1, ge=1, description="Worker processes")
    oracle_limit: int = Field(
        default=DEFAULT_ORACLE_LIMIT, ge=1,
        description="Largest box scanned by the brute-force oracle",
    )
    verbose: bool = Field(default=False, description="Enable debug logging")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        values = {
            "cache_dir": os.getenv("HF_SURGERY_CACHE_DIR") or None,
            "workers": int(os.getenv("HF_SURGERY_WORKERS", "1")),
            "oracle_limit": int(
                os.getenv("HF_SURGERY_ORACLE_LIMIT", str(DEFAULT_ORACLE_LIMIT))
            ),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class SpincValueModel(BaseModel):
    id: int
    representative: List[int]
    d: str


class DInvariantsModel(BaseModel):
    """Correction terms of one manifold."""

    manifold: str = Field(..., description="Input presentation")
    canonical: Optional[str] = Field(
        default=None, description="Canonical form, signed by orientation"
    )
    h1: int
    multiset: List[str]
    classes: List[SpincValueModel]

    @classmethod
    def from_result(cls, manifold: str, d: DInvariants, h1: int,
                    canonical: Optional[str] = None) -> "DInvariantsModel":
        return cls(
            manifold=manifold,
            canonical=canonical,
            h1=h1,
            multiset=[format_rational(v) for v in d.multiset],
            classes=[
                SpincValueModel(
                    id=c.id,
                    representative=list(c.representative),
                    d=format_rational(d.values[c.key]),
                )
                for c in d.classes
            ],
        )


class LabeledValueModel(BaseModel):
    label: int
    multiplicity: int
    d: str


class SurgeryDModel(BaseModel):
    """Correction terms of p/q-surgery on a knot with the given polynomial."""

    p: int
    q: int
    alex: str
    labeled: List[LabeledValueModel]
    multiset: List[str]

    @classmethod
    def from_result(cls, result: SurgeryD) -> "SurgeryDModel":
        p = result.slope.p
        return cls(
            p=p,
            q=result.slope.q,
            alex=result.poly.to_text(),
            labeled=[
                LabeledValueModel(
                    label=label,
                    multiplicity=1 if label == 0 or 2 * label == p else 2,
                    d=format_rational(value),
                )
                for label, value in sorted(result.labeled.items())
            ],
            multiset=[format_rational(v) for v in result.multiset],
        )


class CandidateModel(BaseModel):
    p: int
    q: int
    alex: str
    name: str
    orientation: str
    torus: Optional[List[int]] = None
    determined_by: Optional[str] = None

    @classmethod
    def from_candidate(cls, candidate: Candidate) -> "CandidateModel":
        return cls(
            p=candidate.slope.p,
            q=candidate.slope.q,
            alex=candidate.poly.to_text(),
            name=name_of(candidate.poly),
            orientation=candidate.orientation,
            torus=list(candidate.torus) if candidate.torus else None,
            determined_by=candidate.determined_by,
        )


class MatchReportModel(BaseModel):
    """Report JSON for one manifold."""

    manifold: str
    h1: int
    type: str
    target_d: List[str]
    candidates: List[CandidateModel]
    verdict: str
    unique: bool
    excluded: Optional[str] = None

    @classmethod
    def from_report(cls, report: MatchReport) -> "MatchReportModel":
        return cls(
            manifold=str(report.manifold.data),
            h1=report.h1,
            type=report.type.value,
            target_d=[format_rational(v) for v in report.target_d.multiset],
            candidates=[
                CandidateModel.from_candidate(c) for c in report.candidates
            ],
            verdict=report.verdict.value,
            unique=report.unique,
            excluded=report.excluded,
        )


class ConjectureRowModel(BaseModel):
    m: int
    largest_n: Optional[int] = None
    holds: bool

    @classmethod
    def from_row(cls, row: ConjectureRow) -> "ConjectureRowModel":
        return cls(m=row.m, largest_n=row.largest_n, holds=row.holds)


class ClassificationModel(BaseModel):
    """Output of ``classify``: per-manifold reports plus the summary."""

    h1_max: int
    n_max: int
    reports: List[MatchReportModel]
    unique: List[str]
    candidate_only: List[str]
    not_surgery_count: int
    conjecture: List[ConjectureRowModel] = Field(default_factory=list)


class ManifoldModel(BaseModel):
    """Output of ``sfs normalize``."""

    manifold: str
    canonical: str
    reversed: bool
    type: str
    h1: int
    h1_structure: List[int]
    euler_number: str


class PolynomialModel(BaseModel):
    name: str
    alex: str
    genus: int
    display: str


class TableRowModel(BaseModel):
    key: str
    values: List[str]
    expected: List[str]
    note: Optional[str] = None
    matches: bool
    known_discrepancy: Optional[str] = Field(
        default=None, description="Printed value this row corrects, and why"
    )


class TableModel(BaseModel):
    """Regenerated rows of one reference table."""

    table: str
    rows: List[TableRowModel]


class PolynomialListModel(BaseModel):
    polynomials: List[PolynomialModel]
