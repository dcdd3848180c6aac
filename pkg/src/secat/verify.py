"""
Independent Certificate Verification

verify_certificate re-derives everything from the images of alpha alone: each
image is rendered to bracket text, parsed back and expanded, and the
chain-map identity is recomputed by substituting those re-expanded images
word by word on one side and by differentiating the parsed bracket trees on
the other. No solver state and no derivation code of the model classes is
consulted.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from pydantic import BaseModel, Field

from ..algebra.basis import render_element, to_lie_expr
from ..algebra.expr import Bracket, GenLeaf, LieExpr, Scaled, Sum, expand, render
from ..algebra.parser import parse
from ..algebra.tensor import TensorElement, bracket, koszul_sign
from ..dgl.checks import CheckReport, Violation
from ..errors import InputError
from ..models.naming import copy_id
from .search import Certificate

logger = logging.getLogger(__name__)


class VerificationReport(BaseModel):
    """Every condition a certificate must satisfy, each as a CheckReport"""
    subject: str
    n: int
    degree_bound: int
    passed: bool
    checks: List[CheckReport] = Field(default_factory=list)


def _substitute(element: TensorElement, images: Dict[str, TensorElement], degree: int) -> TensorElement:
    out = TensorElement.zero(degree)
    for word, coefficient in element.items():
        product = images[word[0]]
        for letter in word[1:]:
            product = product * images[letter]
        out = out + product.scale(coefficient)
    return out


def _tree_differential(e: LieExpr, differentials: Mapping[str, TensorElement]) -> TensorElement:
    """D[a,b] = [Da,b] + (-1)^|a| [a,Db] on a bracket tree"""
    if isinstance(e, GenLeaf):
        dg = differentials.get(e.generator.id)
        return TensorElement.zero(e.degree - 1) if dg is None else TensorElement(dg.terms, e.degree - 1)
    if isinstance(e, Bracket):
        left = bracket(_tree_differential(e.left, differentials), expand(e.right))
        right = bracket(expand(e.left), _tree_differential(e.right, differentials))
        return left + right.scale(koszul_sign(e.left.degree))
    if isinstance(e, Scaled):
        return _tree_differential(e.expr, differentials).scale(e.coefficient)
    if isinstance(e, Sum):
        return TensorElement.combine(
            ((Fraction(1), _tree_differential(t, differentials)) for t in e.terms), e.degree - 1
        )
    raise TypeError(f"Not a Lie expression: {e!r}")


def verify_certificate(c: Certificate, N: Optional[int] = None) -> VerificationReport:
    """
    Re-check a certificate from scratch

    Conditions: images use kept letters only, are Lie elements whose rendered
    text re-expands to the same element, have linear part a@1 + ... + a@(n+1)
    with the rest in the U-ideal, and form a chain map up to N. For n = 0 the
    map must also be a retraction onto L(V).
    """
    n = c.problem.n
    N = c.problem.N if N is None else N
    power = c.fat_wedge.power.dgl
    kept = c.fat_wedge.kept
    u_ids = c.fat_wedge.u_ids
    alpha = c.alpha
    alphabet = kept.alphabet

    found: Dict[str, List[Violation]] = {name: [] for name in
                                         ("kept_letters", "lie", "reexpansion", "linear_part", "ideal", "chain_map")}
    reexpanded: Dict[str, TensorElement] = {}
    trees: Dict[str, Optional[LieExpr]] = {}
    generators = [g for g in alpha.source.generators if g.degree <= N]

    def flag(check: str, g, residual: str):
        found[check].append(Violation(generator=g.id, degree=g.degree, residual=residual))

    for g in generators:
        image = alpha.image(g.id)
        outside = sorted(image.letters() - set(alphabet))
        if outside:
            flag("kept_letters", g, f"uses {', '.join(outside)}")
            continue
        try:
            expression = to_lie_expr(image, alphabet)
        except ValueError:
            flag("lie", g, str(image))
            continue
        text = "0" if expression is None else render(expression)
        try:
            tree = None if expression is None else parse(text, alphabet)
            again = TensorElement.zero(g.degree) if tree is None else expand(tree)
        except InputError as e:
            flag("reexpansion", g, f"{text}: {e}")
            continue
        if again != image:
            flag("reexpansion", g, text)
            continue
        reexpanded[g.id] = TensorElement(again.terms, g.degree)
        trees[g.id] = tree

        ids = [g.id] if n == 0 else [copy_id(g.id, i) for i in range(1, n + 2)]
        expected = TensorElement.zero(g.degree)
        for gid in ids:
            expected = expected + TensorElement({(gid,): Fraction(1)}, g.degree)
        # single U letters are part of xi, not of the linear part
        linear = again.filter(lambda word: len(word) == 1 and word[0] not in u_ids)
        if linear != expected:
            flag("linear_part", g, f"{render_element(linear, alphabet)} instead of "
                                   f"{' + '.join(ids)}")
        xi = again - linear
        bad = [word for word in xi.words() if not any(letter in u_ids for letter in word)]
        if bad:
            flag("ideal", g, " + ".join(".".join(word) for word in bad))

    if len(reexpanded) == len(generators):
        differentials = power.differentials
        for g in generators:
            lhs = _substitute(alpha.source.differential(g.id), reexpanded, g.degree - 1)
            tree = trees[g.id]
            rhs = TensorElement.zero(g.degree - 1) if tree is None else _tree_differential(tree, differentials)
            residual = lhs - rhs
            if residual:
                flag("chain_map", g, render_element(residual, power.alphabet))
    else:
        logger.debug("Skipping the chain-map check: some images did not re-expand")

    if n == 0:
        domain = c.problem.map_model.domain
        found["retraction"] = [
            Violation(generator=g.id, degree=g.degree, residual=str(alpha.image(g.id)))
            for g in generators
            if g.id in domain and alpha.image(g.id) != g.element()
        ]

    subject = f"alpha[n={n}]"
    checks = [
        CheckReport(check=name, subject=subject, degree_bound=N, passed=not violations, violations=violations)
        for name, violations in found.items()
    ]
    passed = all(check.passed for check in checks) and len(reexpanded) == len(generators)
    if not passed:
        logger.warning(f"Certificate for n={n} fails: {[ch.check for ch in checks if not ch.passed]}")
    return VerificationReport(subject=subject, n=n, degree_bound=N, passed=passed, checks=checks)
