"""
Pydantic models for verification reports and command configuration
"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class MapIdentity(BaseModel):
    """Which representation a report is about"""
    type: str = Field(..., description="Source Coxeter type, e.g. I2(4)")
    m: int = Field(..., description="Number of strands of the target braid group")
    provenance: str = Field(..., description="Where the (e, f) pair comes from")


class GeneratorEntry(BaseModel):
    """Images of one source generator"""
    name: str = Field(..., description="Generator name, e.g. s2")
    e_cycles: str = Field(..., description="e(s) in cycle notation")
    f_word: str = Field(..., description="f(s) as a braid word")


class RelationResult(BaseModel):
    """Artin relation checked on f-images"""
    lhs: str = Field(..., description="Left side as a source word, e.g. s1s2s1")
    rhs: str = Field(..., description="Right side as a source word")
    equal: bool = Field(..., description="Whether the two images are the same braid")
    nf_lhs: str = Field(..., description="Normal form of f(lhs)")
    nf_rhs: str = Field(..., description="Normal form of f(rhs)")


class CoxeterCheck(BaseModel):
    """Coxeter relation checked on e-images"""
    relation: str
    holds: bool


class DiagramCheck(BaseModel):
    """Commutation of pi_m o f with e o pi_S"""
    samples: int = Field(..., description="Random source words checked")
    max_length: int = Field(..., description="Maximum random word length")
    seed: int = Field(..., description="Random seed")
    failures: int = Field(0, description="Random words where the square does not commute")
    generator_failures: List[str] = Field(default_factory=list, description="Generators whose f and e disagree")
    failing_words: List[str] = Field(default_factory=list, description="First few failing random words")


class Witness(BaseModel):
    """A relation that f does not respect"""
    relation: str
    nf_lhs: str
    nf_rhs: str


class ScanReport(BaseModel):
    """Injectivity / kernel experiment"""
    kind: Literal["grid", "kernel"]
    type: str
    parameters: Dict[str, int] = Field(default_factory=dict)
    elements_examined: int = 0
    kernel_elements: List[str] = Field(default_factory=list, description="Non-trivial source elements with trivial image")
    all_distinct: bool = True
    collisions: List[str] = Field(default_factory=list, description="Pairs of source elements with equal images")
    kernel_candidates_pure: bool = Field(True, description="Every kernel candidate is a pure braid in the source group")
    delta_image_pure: Optional[bool] = Field(None, description="Whether f maps the source Garside element to a pure braid")

    @property
    def kernel_trivial(self) -> bool:
        return not self.kernel_elements


class VerificationReport(BaseModel):
    """Machine-checked verdict for one (e, f) pair"""
    map: MapIdentity
    generators: List[GeneratorEntry]
    relations: List[RelationResult]
    coxeter_checks: List[CoxeterCheck] = Field(default_factory=list)
    embedding_order: Optional[int] = Field(None, description="Order of the group generated by e-images")
    embedding_ok: bool = Field(..., description="e satisfies the Coxeter relations and is injective")
    diagram: DiagramCheck
    is_homomorphism: bool
    verdict: str
    witnesses: List[Witness] = Field(default_factory=list)
    scans: List[ScanReport] = Field(default_factory=list)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "map": {"type": "D4", "m": 8, "provenance": "paper-D4"},
                "is_homomorphism": False,
                "verdict": "NOT a homomorphism",
            }
        }
    )

    @model_validator(mode="after")
    def _verdict_matches_relations(self):
        if self.is_homomorphism != all(rel.equal for rel in self.relations):
            raise ValueError("is_homomorphism must be true exactly when every relation holds")
        return self


class RunConfig(BaseModel):
    """Options of one command-line run"""
    command: Literal["verify", "nf", "map", "render", "scan", "table"]
    coxeter_type: Optional[str] = Field(None, description="Coxeter type text, e.g. B4")
    strands: Optional[int] = Field(None, ge=2, description="Strand count m for nf/render")
    word: str = Field("", description="Braid word or source word")
    bound: Optional[int] = Field(None, ge=1, description="Scan bound L / max canonical length")
    scan_bound: Optional[int] = Field(None, ge=1, description="Attach an injectivity scan to verify")
    samples: int = Field(100, ge=1, description="Random words for the diagram check")
    max_length: int = Field(20, ge=1, description="Maximum random word length")
    seed: int = Field(..., description="Random seed")
    out: Optional[str] = Field(None, description="Output path (stdout when omitted)")
    format: Literal["text", "json", "svg", "ascii"] = "text"

    @model_validator(mode="after")
    def _check_format(self):
        if self.command == "render" and self.format not in ("svg", "ascii"):
            raise ValueError("render needs --format svg or ascii")
        if self.command in ("verify", "scan", "table", "nf", "map") and self.format not in ("text", "json"):
            raise ValueError(f"{self.command} supports --format text or json")
        return self


class NormalFormResult(BaseModel):
    """Normal form of one braid word"""
    strands: int
    word: str
    normal_form: str = Field(..., description="D^p | w1 | w2 | ...")
    delta_power: int
    canonical_length: int
    permutation: str = Field(..., description="Underlying permutation in cycle notation")
    pure: bool


class MapResult(BaseModel):
    """f applied to one source word"""
    type: str
    source_word: str
    image_word: str
    normal_form: str
    permutation: str
    pure: bool
    homomorphic: bool = Field(..., description="Whether the map respects the Artin relations of its type")
