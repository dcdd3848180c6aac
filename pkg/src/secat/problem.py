"""
Certifier Inputs and Transcripts

A SecatProblem asks for a dgl map alpha from L(V ⊕ W) into the fat-wedge
model for n + 1 copies, with alpha(a) = a@1 + ... + a@(n+1) + xi_a and
xi_a in the ideal generated by U. SolveRecord is one line of the search
transcript.
"""

from dataclasses import dataclass, field
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..errors import InputError
from ..models.fatwedge import MapModel


class SearchOptions(BaseModel):
    """
    Knobs of the certificate search

    The defaults mirror the SEARCH_* settings; see Settings.search_options().
    """
    strategy: Literal["backtrack", "greedy"] = Field(
        "backtrack", description="backtrack over kernel directions, or particular solutions only"
    )
    seed: int = Field(0, description="Seed of the randomized restarts")
    budget: int = Field(256, ge=1, description="Explored branch nodes per candidate n")
    restarts: int = Field(4, ge=0, description="Randomized restarts after the main search fails")
    coefficients: List[int] = Field(
        default_factory=lambda: [-2, -1, 0, 1, 2],
        description="Coefficients tried along kernel directions",
    )

    @field_validator("coefficients")
    @classmethod
    def nonzero_choice(cls, v: List[int]) -> List[int]:
        if not any(v):
            raise ValueError("coefficients must contain a nonzero value")
        return sorted(set(v), key=lambda c: (abs(c), c))

    class Config:
        json_schema_extra = {
            "example": {"strategy": "backtrack", "seed": 0, "budget": 256, "restarts": 4,
                        "coefficients": [-2, -1, 0, 1, 2]}
        }


class SolveRecord(BaseModel):
    """One linear solve for xi_a"""
    generator: str = Field(..., description="Source generator a")
    degree: int
    unknowns: int = Field(..., description="Size of the U-ideal Lie basis in this degree")
    kernel_dim: int = Field(..., description="Dimension of the solution space (0 when unique)")
    consistent: bool = Field(..., description="Whether D(xi) = residual has a solution")
    choice: List[int] = Field(default_factory=list, description="Coefficients along the kernel basis")
    xi: Optional[str] = Field(None, description="Chosen xi_a in bracket form")
    residual: Optional[str] = Field(None, description="Right-hand side that could not be met")


@dataclass
class SecatProblem:
    """
    Attributes:
        map_model: L(V) ↪ L(V ⊕ W)
        n: candidate bound (n + 1 copies)
        N: degree bound
        options: search options
    """
    map_model: MapModel
    n: int
    N: int
    options: SearchOptions = field(default_factory=SearchOptions)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"n must be >= 0, got {self.n}")
        top = self.map_model.dgl.max_degree()
        if self.N < top:
            raise InputError(f"Degree bound {self.N} is below the top generator degree {top}")
