"""
Data shapes for the Möbius toolkit.

- Spec objects (OscillationDescriptor, BalloonSpec, WedgeSpec) describe families symbolically.
- Result objects (MobiusResult, ZeroCertificate, ContributingSet, census rows) are what
  the library returns and what the CLI serializes with model_dump(mode="json").
"""
from fractions import Fraction
from typing import Any, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.permutation import Permutation


# --- Permutation structure ---

class Embedding(BaseModel):
    """One occurrence of a pattern: 1-based host positions, strictly increasing."""

    positions: List[int]
    pattern_length: int


class AdjacencyReport(BaseModel):
    """Up/down adjacencies by 1-based position of their first point."""

    up_positions: List[int] = Field(default_factory=list)
    down_positions: List[int] = Field(default_factory=list)
    has_triple: bool = False
    longest_monotone_interval: int = 0

    @property
    def has_opposing(self) -> bool:
        return bool(self.up_positions) and bool(self.down_positions)

    @property
    def adjacency_free(self) -> bool:
        return not self.up_positions and not self.down_positions


class SumDecomposition(BaseModel):
    parts: List[Permutation]
    kind: Literal["direct", "skew"]


# --- Family descriptors ---

class OscillationDescriptor(BaseModel):
    """Increasing oscillation W_n (starts with a descent) or M_n."""

    model_config = ConfigDict(frozen=True)

    shape: Literal["W", "M"]
    n: int = Field(ge=1)


class BalloonSpec(BaseModel):
    """beta inserted into alpha between columns i, i+1 and rows j, j+1."""

    model_config = ConfigDict(frozen=True)

    alpha: Permutation
    beta: Permutation
    i: int
    j: int

    @model_validator(mode="after")
    def _check_indexes(self) -> "BalloonSpec":
        if len(self.alpha) == 0 or len(self.beta) == 0:
            raise ValueError("alpha and beta must be non-empty")
        a = len(self.alpha)
        if not (0 <= self.i <= a and 0 <= self.j <= a):
            raise ValueError(f"i and j must lie in 0..{a}, got i={self.i}, j={self.j}")
        return self


class WedgeSpec(BaseModel):
    """k-wedge: first k points of alpha, then beta above everything, then the rest of alpha."""

    model_config = ConfigDict(frozen=True)

    alpha: Permutation
    beta: Permutation
    k: int

    @model_validator(mode="after")
    def _check_split(self) -> "WedgeSpec":
        if len(self.alpha) == 0 or len(self.beta) == 0:
            raise ValueError("alpha and beta must be non-empty")
        if not 0 <= self.k <= len(self.alpha):
            raise ValueError(f"k must lie in 0..{len(self.alpha)}, got {self.k}")
        return self

    def as_balloon(self) -> BalloonSpec:
        return BalloonSpec(alpha=self.alpha, beta=self.beta, i=self.k, j=len(self.alpha))


# --- Poset structure ---

class IntervalPoset(BaseModel):
    """Elements of [bottom, top] in rank order (length, then lexicographic); covers as (upper, lower) index pairs."""

    bottom: Permutation
    top: Permutation
    elements: List[Permutation]
    covers: List[Tuple[int, int]] = Field(default_factory=list)

    def index(self) -> dict[Permutation, int]:
        return {p: idx for idx, p in enumerate(self.elements)}


class Chain(BaseModel):
    indices: List[int]

    @property
    def length(self) -> int:
        return len(self.indices) - 1


# --- Möbius results ---

class MobiusResult(BaseModel):
    """Exact value plus which rule or engine produced it and how much work it took."""

    value: int
    method: str
    work: dict[str, int] = Field(default_factory=dict)


class CrossCheckReport(BaseModel):
    lower: Permutation
    upper: Permutation
    values: dict[str, int]
    agree: bool
    discrepancies: List[str] = Field(default_factory=list)


# --- Fast-path results ---

ZeroRule = Literal[
    "long_corner",
    "triple_adjacency",
    "monotone_interval",
    "opposing_adjacencies",
    "sum_plus_one_annihilator",
    "named_annihilator",
    "annihilator_pair",
    "sigma_annihilator",
    "symmetry_1243_interval",
]


class ZeroCertificate(BaseModel):
    """Which theorem proves μ = 0, with the positions/permutations it rests on."""

    rule: ZeroRule
    witness: dict[str, Any] = Field(default_factory=dict)


class ShapeDescriptor(BaseModel):
    """Shape of a sum-indecomposable permutation inside an increasing oscillation.

    tower k = ⊞^{k+1}21, 1+tower k = 1⧉⊞^k 21, tower+1 k = ⊞^k 21⧉1, 1+tower+1 k = 1⧉⊞^k 21⧉1.
    The parameter is ignored for "21".
    """

    model_config = ConfigDict(frozen=True)

    shape: Literal["21", "tower", "1+tower", "tower+1", "1+tower+1"]
    k: int = Field(default=1, ge=1)


class ContributingEntry(BaseModel):
    alpha: Permutation
    weight: Literal[-1, 0, 1]
    r: int
    shape: Optional[ShapeDescriptor] = None
    mobius: Optional[int] = None


class ContributingSet(BaseModel):
    sigma: Permutation
    pi_length: int
    entries: List[ContributingEntry] = Field(default_factory=list)
    value: Optional[int] = None


class ContainmentClass(BaseModel):
    kind: Literal["complete", "proper_reduction", "matryoshka", "defective"]
    minimal_core: Optional[Permutation] = None
    embedding_cores: List[Permutation] = Field(default_factory=list)


class BalloonCorrection(BaseModel):
    """μ[1, π] = −reduction_sum + correction; the three chain sums add up to the same value."""

    value: int
    reduction_sum: int
    correction: int
    reductions: List[Permutation] = Field(default_factory=list)
    reduction_chain_sum: int = 0
    matryoshka_chain_sum: int = 0
    chains: int = 0


# --- Census rows ---

class DensityRow(BaseModel):
    n: int
    total: int
    zero_count: int
    d_n_exact: str
    d_n: str
    mode: Literal["fast_paths_plus_oracle", "oracle_only"]
    breakdown: dict[str, int] = Field(default_factory=dict)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.zero_count, self.total)


class AdjacencyCensus(BaseModel):
    n: int
    total: int
    a_n: int  # no up-adjacency
    b_n: int  # adjacency-free
    s_n: int  # opposing adjacencies
    identity_holds: bool
    a000255: int
    a002464: int
    matches_oeis: bool


class NonOpposingRow(BaseModel):
    n: int
    zero_count: int
    nonzero_count: int


class ExtremalRow(BaseModel):
    n: int
    min_value: int
    max_value: int
    min_witnesses: List[Permutation] = Field(default_factory=list)
    max_witnesses: List[Permutation] = Field(default_factory=list)
    min_simple: List[bool] = Field(default_factory=list)
    max_simple: List[bool] = Field(default_factory=list)


class GrowthRow(BaseModel):
    n: int
    value: int
    bound_exponent: int  # bound is 2**bound_exponent (exponent may be -1)
    bound_holds: bool
    doubling_holds: Optional[bool] = None


class FamilyRow(BaseModel):
    kind: str
    params: dict[str, int]
    length: int
    value: int
    method: str
    formula: Optional[int] = None
    published: Optional[int] = None
    matches_formula: Optional[bool] = None
    matches_published: Optional[bool] = None


class ConjectureLine(BaseModel):
    """One conjecture check. A mismatch is reported data, never a failure."""

    name: str
    params: dict[str, Any] = Field(default_factory=dict)
    expected: str
    observed: str
    match: bool


class OscillationRow(BaseModel):
    n: int
    w_value: int
    m_value: int


class OscillationSweep(BaseModel):
    max_n: int
    rows: List[OscillationRow] = Field(default_factory=list)
    sign_report: List[ConjectureLine] = Field(default_factory=list)
    band_report: List[ConjectureLine] = Field(default_factory=list)
    prime_report: List[ConjectureLine] = Field(default_factory=list)


# --- CLI cache ---

class CacheEntry(BaseModel):
    value: int
    method: str


class CacheFile(BaseModel):
    """Versioned cache; checksum covers the canonical JSON of entries."""

    version: str
    checksum: str = ""
    entries: dict[str, CacheEntry] = Field(default_factory=dict)


# --- Audit trail ---

class AuditEvent(BaseModel):
    """One line of outputs/<run_id>/audit.jsonl."""

    timestamp: str
    run_id: str
    event_type: str
    engine_version: str
    payload: dict[str, Any] = Field(default_factory=dict)
