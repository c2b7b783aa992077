from pydantic import BaseModel, ConfigDict, Field, RootModel, field_validator, model_validator
from typing import Dict, List, Literal, Optional, Tuple


class SimpleEntry(BaseModel):
    id: int = Field(..., ge=0, description="Backend id of the simple; 0 is reserved for the identity")
    display: str = Field(..., min_length=1, description="Name used in reports, usually a spelling in the atoms")


class GarsideTableModel(BaseModel):
    name: str = Field(..., description="Human readable name of the monoid")
    simples: List[SimpleEntry] = Field(..., description="All simples; the identity (id 0) may be omitted")
    delta: int = Field(..., description="Id of the Garside element Δ")
    products: List[Tuple[int, int, int]] = Field(
        ..., description="Partial product table as [u, v, w] triples meaning u·v = w; rows with 0 are optional"
    )

    @field_validator('simples')
    def validate_unique_ids(cls, v):
        ids = [entry.id for entry in v]
        if len(ids) != len(set(ids)):
            raise ValueError('simple ids must be unique')
        return v

    model_config = ConfigDict(json_schema_extra={
        "example": {
            "name": "<a,b | aa = bb>",
            "simples": [{"id": 1, "display": "a"}, {"id": 2, "display": "b"}, {"id": 3, "display": "aa"}],
            "delta": 3,
            "products": [[1, 1, 3], [2, 2, 3]],
        }
    })


class ExperimentConfig(BaseModel):
    structure: str = Field(..., description="Structure descriptor such as 'artin:A3' or 'prod:artin:A2,artin:A2'")
    k_values: List[int] = Field(..., description="Normal-form lengths to sample")
    samples: int = Field(..., ge=1, description="Samples per length")
    seed: int = Field(0, description="Seed of the per-sample random streams")
    out: Optional[str] = Field(None, description="Output path; standard output when omitted")
    format: Literal['csv', 'json'] = Field('csv', description="Output format")
    cross_check_fraction: float = Field(
        0.01, ge=0.0, le=1.0, description="Share of samples re-computed with the literal-meet oracle"
    )

    @field_validator('k_values')
    def validate_k_values(cls, v):
        if not v:
            raise ValueError('at least one k is required')
        if any(k < 1 for k in v):
            raise ValueError('every k must be at least 1')
        return v

    @field_validator('format', mode='before')
    def validate_format(cls, v):
        if isinstance(v, str):
            v = v.lower()
            if v not in ('csv', 'json'):
                raise ValueError("format must be one of: 'csv', 'json' (case-insensitive)")
        return v

    model_config = ConfigDict(json_schema_extra={
        "example": {
            "structure": "artin:A3",
            "k_values": [10, 20, 40, 80],
            "samples": 2000,
            "seed": 7,
            "format": "csv",
        }
    })


class GrowthProfileModel(BaseModel):
    rate: float = Field(..., description="Exponential growth rate (spectral radius)")
    degree: int = Field(..., description="Polynomial correction exponent")
    ball_rate: float = Field(..., description="Growth rate of the ball L-bar")
    ball_degree: int = Field(..., description="Polynomial correction of the ball")
    count_ratio: Optional[float] = Field(None, description="Exact |L^(k+1)| / |L^(k)| at the reported k")


class TransitivityModel(BaseModel):
    transitive: bool
    k: Optional[int] = Field(None, description="Smallest transitivity degree, i.e. the diameter")
    diameter: Optional[int] = None
    components: int = Field(..., description="Number of strongly connected components with an edge")


class AlphaBetaModel(BaseModel):
    alpha: float
    beta: float
    alpha_lt_beta: bool
    pseq_ratio: Optional[float] = Field(None, description="Exact |PSeq^(k+1)| / |PSeq^(k)|")
    words_ratio: Optional[float] = Field(None, description="Exact |L^(k+1)| / |L^(k)|")


class DeltaPureModel(BaseModel):
    pure: bool
    witnesses: Dict[str, str] = Field(..., description="Atom display name mapped to Δ_a")


class ReportResponse(BaseModel):
    structure: str
    atoms: List[str]
    proper_simples: int
    acceptor_vertices: int
    acceptor_edges: int
    essential: List[str]
    transitive: bool
    k: Optional[int] = None
    diameter: Optional[int] = None
    beta: float
    degree: int
    alpha: Optional[float] = None
    alpha_lt_beta: Optional[bool] = None
    delta_pure: bool
    rigid_counts: List[str] = Field(..., description="Rigid counts for k = 1.. as decimal strings")
    word_counts: List[str] = Field(..., description="|L^(k)| for k = 0.. as decimal strings")

    model_config = ConfigDict(json_schema_extra={
        "example": {
            "structure": "artin:A2",
            "atoms": ["1", "2"],
            "proper_simples": 4,
            "acceptor_vertices": 4,
            "acceptor_edges": 8,
            "essential": ["1", "2", "12", "21"],
            "transitive": True,
            "k": 2,
            "diameter": 2,
            "beta": 2.0,
            "degree": 0,
            "alpha": 0.0,
            "alpha_lt_beta": True,
            "delta_pure": True,
            "rigid_counts": ["2", "4"],
            "word_counts": ["1", "4", "8"],
        }
    })


class PdExperimentRow(BaseModel):
    k: int
    mean_pd: float
    max_pd: int
    samples: int


class VerifyLine(BaseModel):
    claim: str
    passed: bool
    detail: str = ""

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.claim}" + (f" -- {self.detail}" if self.detail and not self.passed else "")


class VerifyReport(BaseModel):
    lines: List[VerifyLine]
    passed: bool = True

    @model_validator(mode='after')
    def compute_passed(self):
        self.passed = all(line.passed for line in self.lines)
        return self


class WitnessEntry(BaseModel):
    name: str = Field(..., description="Name of the witness, e.g. 'x_3' or 'x_4bar'")
    word: str = Field(..., pattern=r"^\d+$", description="Reduced word as a digit string over the diagram labels")
    start: List[int] = Field(..., description="Expected starting set S")
    finish: List[int] = Field(..., description="Expected finishing set F")


class WitnessCatalogModel(RootModel[Dict[str, List[WitnessEntry]]]):
    """Witness words per Coxeter type, keyed by descriptors such as 'E6' or 'F4'."""
