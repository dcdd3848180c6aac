"""
Lie Expression Trees

Formal bracket expressions as typed by users or produced by basis
decompositions. Every node knows its degree; sums refuse summands of different
degrees at construction time.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Tuple

from ..errors import MixedDegreeError
from .tensor import Generator, TensorElement, bracket


class LieExpr:
    """Base class for expression nodes"""

    @property
    def degree(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class GenLeaf(LieExpr):
    generator: Generator

    @property
    def degree(self) -> int:
        return self.generator.degree


@dataclass(frozen=True)
class Bracket(LieExpr):
    left: LieExpr
    right: LieExpr

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree


@dataclass(frozen=True)
class Scaled(LieExpr):
    coefficient: Fraction
    expr: LieExpr

    @property
    def degree(self) -> int:
        return self.expr.degree


@dataclass(frozen=True)
class Sum(LieExpr):
    terms: Tuple[LieExpr, ...]

    def __post_init__(self):
        if not self.terms:
            raise MixedDegreeError("Empty sum has no degree")
        degrees = {term.degree for term in self.terms}
        if len(degrees) > 1:
            raise MixedDegreeError(
                f"Sum mixes degrees {sorted(degrees)}"
            )

    @property
    def degree(self) -> int:
        return self.terms[0].degree


def left_normed(generators: Sequence[Generator]) -> LieExpr:
    """[[...[g1,g2],g3],...,gk] (a single generator for k = 1)"""
    leaves = [GenLeaf(g) for g in generators]
    return reduce(Bracket, leaves[1:], leaves[0])


def expand(e: LieExpr) -> TensorElement:
    """Tensor normal form of an expression"""
    if isinstance(e, GenLeaf):
        return e.generator.element()
    if isinstance(e, Bracket):
        return bracket(expand(e.left), expand(e.right))
    if isinstance(e, Scaled):
        return expand(e.expr).scale(e.coefficient)
    if isinstance(e, Sum):
        return TensorElement.combine(((Fraction(1), expand(t)) for t in e.terms), e.degree)
    raise TypeError(f"Not a Lie expression: {e!r}")


def is_zero(e: LieExpr) -> bool:
    return expand(e).is_zero()


# ============================================================================
# Rendering
# ============================================================================

def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(e: LieExpr) -> str:
    """
    Text form accepted back by the parser

    Examples:
        2*[x,[x,y]] - 1/2*[y,[x,x]]
    """
    if isinstance(e, GenLeaf):
        return e.generator.id
    if isinstance(e, Bracket):
        return f"[{render(e.left)},{render(e.right)}]"
    if isinstance(e, Scaled):
        inner = render(e.expr)
        if isinstance(e.expr, (Sum, Scaled)):
            inner = f"({inner})"
        if e.coefficient == 1:
            return inner
        return f"{_format_coefficient(e.coefficient)}*{inner}"
    if isinstance(e, Sum):
        out = render(e.terms[0])
        for term in e.terms[1:]:
            if isinstance(term, Scaled) and term.coefficient < 0:
                out += " - " + render(Scaled(-term.coefficient, term.expr))
            else:
                out += " + " + render(term)
        return out
    raise TypeError(f"Not a Lie expression: {e!r}")
