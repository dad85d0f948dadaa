"""Shared record types: certificates, outcomes and reports that leave the process."""

from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------

class CertificateMethod(str, Enum):
    BERSTEL_3 = "berstel-3"
    CROCHEMORE_5 = "crochemore-5"


class ConstructionSource(str, Enum):
    APPENDIX = "appendix"
    ASSEMBLED = "assembled"


class SearchMode(str, Enum):
    FIRST = "first"
    ALL = "all"


class StemEvidence(str, Enum):
    UNIFORM_MORPHISM = "uniform_morphism"
    MULLER_MORPHISM = "muller_morphism"
    CITED = "cited_not_bundled"
    TRIVIAL = "trivial"  # every aligned block of a square-free word is a permuted stem
    UNKNOWN = "not_established"


class StemSource(str, Enum):
    QUOTED = "quoted"
    IMAGE_PREFIX = "image_prefix"
    DISCOVERED = "discovered"
    NOT_FOUND = "not_found"


# ---------------------------------------------------------------------------
# Squares and certificates
# ---------------------------------------------------------------------------

class SquareWitness(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int = Field(ge=0)
    half_length: int = Field(ge=1)


class Counterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    word: str  # the preimage, as digit text
    image_witness: SquareWitness


class SquarefreeCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: CertificateMethod
    tested_words: int
    verdict: bool
    counterexample: Optional[Counterexample] = None

    @model_validator(mode="after")
    def _failure_has_counterexample(self) -> SquarefreeCertificate:
        if not self.verdict and self.counterexample is None:
            raise ValueError("a failing certificate must carry a counterexample")
        return self


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

class ConstructionRecipe(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    source: ConstructionSource
    q: Optional[int] = None
    r: Optional[int] = None
    x_length: Optional[int] = None
    k: Optional[int] = None
    occurrence: int = 0  # which 01v01 factor of t (0 = first) produced x

    @model_validator(mode="after")
    def _assembled_is_consistent(self) -> ConstructionRecipe:
        if self.source is ConstructionSource.ASSEMBLED:
            if None in (self.q, self.r, self.x_length, self.k):
                raise ValueError("assembled recipe needs q, r, x_length and k")
            if self.x_length % 4 != 1 or self.x_length != 4 * self.k - 15:
                raise ValueError(
                    f"x_length {self.x_length} does not match k={self.k}"
                )
        return self


class StemExistence(BaseModel):
    n: int
    exists: Optional[bool]  # None: neither existence nor nonexistence is established
    evidence: StemEvidence
    bundled: bool


# ---------------------------------------------------------------------------
# alpha-word properties
# ---------------------------------------------------------------------------

class PropertyCheck(BaseModel):
    name: str
    passed: bool
    witness: Optional[str] = None


class AlphaPropertyReport(BaseModel):
    q: int
    reversed: bool = False
    checks: list[PropertyCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[PropertyCheck]:
        return [check for check in self.checks if not check.passed]


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

class SearchOutcome(BaseModel):
    n: int
    mode: SearchMode
    solutions: list[str] = Field(default_factory=list)
    nodes_explored: int = 0
    symmetry_factor: int = 3
    exhaustive: bool = True
    budget: Optional[int] = None

    @property
    def proves_nonexistence(self) -> bool:
        return self.exhaustive and not self.solutions


class AppendixEntryCheck(BaseModel):
    n: int
    seed: str
    certified: bool
    searched: bool = False
    found_by_search: Optional[bool] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.certified and self.found_by_search is not False


class AppendixCheckReport(BaseModel):
    ceiling: int
    entries: list[AppendixEntryCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


# ---------------------------------------------------------------------------
# Stems
# ---------------------------------------------------------------------------

class StemCertificate(BaseModel):
    stem: str
    permutations: list[str] = Field(default_factory=list)  # images of 0,1,2 per block
    covered_length: int


class StreamSummary(BaseModel):
    n: int
    length: int
    blocks: int
    checker_rejections: int = 0
    window_check_passed: Optional[bool] = None
    recipe: ConstructionRecipe
    certificate: StemCertificate


class MullerImageReport(BaseModel):
    letter: int
    length: int
    decoded: bool
    blocks: Optional[int] = None
    permutations: list[str] = Field(default_factory=list)
    failure: Optional[str] = None


class MullerReport(BaseModel):
    n: int
    stem: Optional[str]
    stem_source: StemSource
    certificate: SquarefreeCertificate
    images: list[MullerImageReport] = Field(default_factory=list)
    candidates: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.certificate.verdict and all(image.decoded for image in self.images)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

class RunReport(BaseModel):
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    verdicts: dict[str, bool] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)
    timings: dict[str, float] = Field(default_factory=dict)
    fixture_checksums: dict[str, str] = Field(default_factory=dict)
    exit_code: int = 0
