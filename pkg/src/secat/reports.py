"""
Report Models

Pydantic models for everything the CLI prints with --json and the API
returns. Field order is the JSON key order, so reports of two runs with the
same seed are byte-identical (timings are opt-in).
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..algebra.basis import render_element
from ..models.replacement import Replacement
from .certify import SecatResult
from .modelfile import write_model
from .problem import SolveRecord
from .search import Certificate, NoCertificate, Outcome
from .verify import VerificationReport


# ============================================================================
# Certificate Models
# ============================================================================

class CertificateReport(BaseModel):
    """
    A found alpha, generator by generator

    Images are bracket expressions over the fat-wedge generators.
    """
    n: int = Field(..., description="Fat-wedge index (n + 1 copies)")
    degree_bound: int
    images: Dict[str, str] = Field(..., description="Generator id -> alpha(generator)")
    u_generators: List[str] = Field(default_factory=list, description="Generators spanning U, sorted")
    verification: Optional[VerificationReport] = None

    class Config:
        json_schema_extra = {
            "example": {
                "n": 1,
                "degree_bound": 8,
                "images": {"w": "w@1 + w@2"},
                "u_generators": [],
                "verification": None,
            }
        }


class NOutcome(BaseModel):
    """Search outcome for one n"""
    n: int
    status: str = Field(..., description="'certificate' or 'no_certificate'")
    exhaustive: Optional[bool] = Field(
        None, description="For failures: True means no map of the required shape exists up to the bound"
    )
    reason: Optional[str] = None
    generator: Optional[str] = Field(None, description="Generator whose solve failed")
    residual: Optional[str] = Field(None, description="Right-hand side that could not be met")
    explored: int = Field(0, description="Branch nodes visited")
    transcript: List[SolveRecord] = Field(default_factory=list)


class ReplacementReport(BaseModel):
    """Free extension L(V) ↪ L(V ⊕ W) replacing a morphism"""
    strategy: str
    minimal: bool
    domain: List[str]
    relative: List[str]
    model: str = Field(..., description="The replaced model in model file format")


class SecatReport(BaseModel):
    subject: str
    degree_bound: int
    max_n: int
    bound: Optional[int] = Field(None, description="Smallest n with a certificate")
    statement: str = Field(..., description="What the outcome does and does not claim")
    outcomes: List[NOutcome] = Field(default_factory=list)
    certificate: Optional[CertificateReport] = None
    replacement: Optional[ReplacementReport] = None


class CommandReport(BaseModel):
    """
    Envelope of every command

    status is one of: ok, failed, certificate, no_certificate.
    """
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    degree_bound: Optional[int] = None
    status: str
    certificate: Optional[Dict[str, str]] = Field(None, description="alpha as generator -> expression")
    transcript: List[SolveRecord] = Field(default_factory=list)
    details: Optional[Any] = None
    timings: Optional[Dict[str, float]] = Field(None, description="Seconds per phase (opt-in)")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "cat",
                "inputs": {"file": "s3.dgl", "max_n": 3},
                "degree_bound": 8,
                "status": "certificate",
                "certificate": {"w": "w@1 + w@2"},
                "transcript": [],
                "details": None,
                "timings": None,
            }
        }


# ============================================================================
# Conversions
# ============================================================================

def certificate_report(c: Certificate, verification: Optional[VerificationReport] = None) -> CertificateReport:
    alphabet = c.fat_wedge.kept.alphabet
    images = {
        g.id: render_element(c.alpha.image(g.id), alphabet)
        for g in c.alpha.source.generators
    }
    return CertificateReport(
        n=c.problem.n,
        degree_bound=c.problem.N,
        images=images,
        u_generators=sorted(c.fat_wedge.u_ids),
        verification=verification,
    )


def outcome_report(outcome: Outcome) -> NOutcome:
    if isinstance(outcome, NoCertificate):
        return NOutcome(
            n=outcome.problem.n,
            status="no_certificate",
            exhaustive=outcome.exhaustive,
            reason=outcome.reason,
            generator=outcome.generator,
            residual=outcome.residual,
            explored=outcome.explored,
            transcript=outcome.transcript,
        )
    return NOutcome(n=outcome.problem.n, status="certificate", explored=outcome.explored,
                    transcript=outcome.transcript)


def replacement_report(r: Replacement) -> ReplacementReport:
    return ReplacementReport(
        strategy=r.strategy,
        minimal=r.minimal,
        domain=list(r.map_model.domain_ids),
        relative=list(r.map_model.relative_ids),
        model=write_model(r.map_model),
    )


def statement(result: SecatResult, label: str = "secat") -> str:
    N = result.degree_bound
    if result.bound is not None:
        return f"{label} <= {result.bound} (certificate verified up to degree {N})"
    if result.outcomes and all(isinstance(o, NoCertificate) and o.exhaustive for o in result.outcomes):
        first = result.outcomes[0].problem.n
        return (f"no map of the required shape for {first} <= n <= {result.max_n} up to degree {N}; "
                f"{label} > {result.max_n} for the strict search")
    return f"inconclusive: no certificate found for n <= {result.max_n} up to degree {N}"


def secat_report(result: SecatResult, subject: str, label: str = "secat") -> SecatReport:
    certificate = result.certificate
    return SecatReport(
        subject=subject,
        degree_bound=result.degree_bound,
        max_n=result.max_n,
        bound=result.bound,
        statement=statement(result, label),
        outcomes=[outcome_report(o) for o in result.outcomes],
        certificate=certificate_report(certificate, result.verification) if certificate else None,
        replacement=replacement_report(result.replacement) if result.replacement else None,
    )
