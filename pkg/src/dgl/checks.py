"""
Degree-Bounded Verification

Every constructed model and every certificate passes through these checks.
Each report states the degree bound it was computed under; nothing is
claimed beyond it.
"""

import logging
from typing import List, Optional, Union

from pydantic import BaseModel, Field

from ..algebra.basis import render_element
from ..algebra.tensor import TensorElement
from .dgl import Dgl
from .morphism import DglMorphism, DirectProduct, ProductElement

logger = logging.getLogger(__name__)


# ============================================================================
# Report Models
# ============================================================================

class Violation(BaseModel):
    """One generator on which a check failed"""
    generator: str = Field(..., description="Generator id")
    degree: int = Field(..., description="Degree of the generator")
    residual: str = Field(..., description="Nonzero residual in bracket (or tensor) form")


class CheckReport(BaseModel):
    """
    Outcome of a bounded check

    passed is True iff violations is empty.
    """
    check: str = Field(..., description="Check name, e.g. 'd_squared' or 'chain_map'")
    subject: str = Field(..., description="Model or morphism name")
    degree_bound: Optional[int] = Field(None, description="Degree bound N (None for degree-free checks)")
    passed: bool
    violations: List[Violation] = Field(default_factory=list)

    class Config:
        json_schema_extra = {
            "example": {
                "check": "chain_map",
                "subject": "alpha",
                "degree_bound": 8,
                "passed": False,
                "violations": [{"generator": "y", "degree": 3, "residual": "2*[x@1,x@2]"}],
            }
        }


# ============================================================================
# Rendering
# ============================================================================

def render_in(target: Union[Dgl, DirectProduct], element: Union[TensorElement, ProductElement]) -> str:
    """Bracket form of an element of a Dgl or of a direct product"""
    if isinstance(target, DirectProduct):
        return "(" + ", ".join(
            render_element(component, factor.alphabet)
            for factor, component in zip(target.factors, element.components)
        ) + ")"
    return render_element(element, target.alphabet)


# ============================================================================
# Checks
# ============================================================================

def check_d_squared(L: Dgl, N: int) -> CheckReport:
    """d(d(g)) = 0 for every generator of degree <= N"""
    violations = []
    for g in L.generators:
        if g.degree > N:
            continue
        residual = L.d(L.differential(g.id))
        if residual:
            violations.append(Violation(generator=g.id, degree=g.degree, residual=render_in(L, residual)))
    if violations:
        logger.warning(f"d² ≠ 0 on {len(violations)} generator(s) of {L.name}")
    return CheckReport(check="d_squared", subject=L.name, degree_bound=N,
                       passed=not violations, violations=violations)


def check_minimal(L: Dgl) -> CheckReport:
    """No differential has a word-length-one component"""
    violations = [
        Violation(generator=g.id, degree=g.degree,
                  residual=render_in(L, L.differential(g.id).linear_part()))
        for g in L.generators
        if L.differential(g.id).linear_part()
    ]
    return CheckReport(check="minimal", subject=L.name, degree_bound=None,
                       passed=not violations, violations=violations)


def check_chain_map(phi: DglMorphism, N: int) -> CheckReport:
    """phi(dg) = D(phi(g)) for every source generator of degree <= N"""
    violations = []
    for g in phi.source.generators:
        if g.degree > N:
            continue
        residual = phi.apply(phi.source.differential(g.id)) - phi.target.d(phi.image(g.id))
        if residual:
            violations.append(Violation(generator=g.id, degree=g.degree,
                                        residual=render_in(phi.target, residual)))
    if violations:
        logger.info(f"{phi.name} is not a chain map: first failure on {violations[0].generator}")
    return CheckReport(check="chain_map", subject=phi.name, degree_bound=N,
                       passed=not violations, violations=violations)
