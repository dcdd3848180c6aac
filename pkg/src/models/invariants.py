"""
Structural Checks for Product and Power Models

Beyond d² = 0 and the quasi-isomorphism, a product model must satisfy:

- copies: D(z@i) is the differential of z relabelled to copy i
- projection: phi sends z@i to the i-th factor and kills longer generators
- quadratic part: D(s{a@i,b@j}) - [a@i,b@j] only has words with a letter of
  length >= 2
- higher suspensions: every word of D(g), g of length l >= 3, uses letters
  of length <= l and at least one of length l - 1 or l
- stage closure: L(V_<=n ⊕ W_<=m ⊕ s(V_<=n ⊗ W_<=m)) is a sub-dgl
- stage containment: D(s(V_n ⊗ W_m)) ⊂ L(V_<=n ⊕ W_<=m ⊕ s(V_<n ⊗ W_<=m) ⊕ s(V_<=n ⊗ W_<m))
"""

import logging
from typing import List, Optional

from pydantic import BaseModel, Field

from ..algebra.tensor import bracket
from ..dgl.checks import CheckReport, Violation, check_d_squared, check_minimal, render_in
from ..dgl.homology import QuasiIsoReport, check_quasi_iso
from ..errors import ClosureViolation
from .naming import PowerGenerator
from .product import ProductModel, ProductStep

logger = logging.getLogger(__name__)


class ProductInvariantReport(BaseModel):
    subject: str
    degree_bound: int
    passed: bool
    checks: List[CheckReport] = Field(default_factory=list)
    quasi_iso: Optional[QuasiIsoReport] = None


def _length(P: ProductModel, gid: str) -> int:
    g = P.dgl.generator(gid)
    return g.length if isinstance(g, PowerGenerator) else 1


def _report(name: str, P: ProductModel, violations: List[Violation]) -> CheckReport:
    return CheckReport(check=name, subject=P.dgl.name, degree_bound=P.degree_bound,
                       passed=not violations, violations=violations)


def check_copies(P: ProductModel) -> CheckReport:
    violations = []
    for factor in P.factors:
        for g in factor.generators:
            residual = P.dgl.differential(g.id) - factor.differential(g.id)
            if residual:
                violations.append(Violation(generator=g.id, degree=g.degree,
                                            residual=render_in(P.dgl, residual)))
    return _report("copies", P, violations)


def check_projection(P: ProductModel) -> CheckReport:
    factor_of = {g.id: i for i, factor in enumerate(P.factors) for g in factor.generators}
    product = P.phi.target
    violations = []
    for g in P.dgl.generators:
        if g.id in factor_of:
            expected = product.embed(factor_of[g.id], g.element())
        else:
            expected = product.zero(g.degree)
        residual = P.phi.image(g.id) - expected
        if residual:
            violations.append(Violation(generator=g.id, degree=g.degree,
                                        residual=render_in(product, residual)))
    return _report("projection", P, violations)


def check_suspension_shape(P: ProductModel) -> CheckReport:
    """Quadratic-part and higher-suspension conditions on D"""
    violations = []
    for g in P.dgl.generators:
        if not isinstance(g, PowerGenerator) or g.length < 2:
            continue
        dg = P.dgl.differential(g.id)
        if g.length == 2:
            a, b = (P.dgl.element(f"{base}@{copy}") for base, copy in zip(g.bases, g.copies))
            rest = dg - bracket(a, b)
            bad = [w for w in rest.words() if all(_length(P, letter) < 2 for letter in w)]
        else:
            bad = [
                w for w in dg.words()
                if any(_length(P, letter) > g.length for letter in w)
                or not any(_length(P, letter) in (g.length - 1, g.length) for letter in w)
            ]
        if bad:
            violations.append(Violation(generator=g.id, degree=g.degree,
                                        residual=" + ".join(".".join(w) for w in bad)))
    return _report("suspension_shape", P, violations)


def _stage_violations(P: ProductModel, step: ProductStep) -> List[Violation]:
    violations = []
    stage = {**step.v_stages, **step.w_stages}
    v_max = max(step.v_stages.values(), default=0)
    w_max = max(step.w_stages.values(), default=0)

    for n in range(v_max + 1):
        for m in range(w_max + 1):
            ids = [gid for gid in step.v_ids if stage[gid] <= n]
            ids += [gid for gid in step.w_ids if stage[gid] <= m]
            ids += [s for s, (v, w) in step.suspensions.items() if stage[v] <= n and stage[w] <= m]
            try:
                P.dgl.sub_dgl(ids)
            except ClosureViolation as e:
                violations.append(Violation(generator=e.generator_id,
                                            degree=P.dgl.generator(e.generator_id).degree,
                                            residual=f"stage ({n},{m}) not closed: {'.'.join(e.witness)}"))

    for s, (v, w) in step.suspensions.items():
        n, m = stage[v], stage[w]
        allowed = {gid for gid in step.v_ids if stage[gid] <= n}
        allowed |= {gid for gid in step.w_ids if stage[gid] <= m}
        allowed |= {
            t for t, (a, b) in step.suspensions.items()
            if (stage[a] < n and stage[b] <= m) or (stage[a] <= n and stage[b] < m)
        }
        outside = sorted(P.dgl.differential(s).letters() - allowed)
        if outside:
            violations.append(Violation(generator=s, degree=P.dgl.generator(s).degree,
                                        residual=f"uses {', '.join(outside)}"))
    return violations


def check_stages(P: ProductModel) -> CheckReport:
    """Stage closure and containment of the last binary extension"""
    if not P.steps:
        return _report("stages", P, [])
    return _report("stages", P, _stage_violations(P, P.steps[-1]))


def check_product_invariants(P: ProductModel, include_quasi_iso: bool = True) -> ProductInvariantReport:
    """Every structural check on a product model, up to its degree bound"""
    N = P.degree_bound
    checks = [
        check_d_squared(P.dgl, N),
        check_minimal(P.dgl),
        check_copies(P),
        check_projection(P),
        check_suspension_shape(P),
        check_stages(P),
    ]
    quasi_iso = check_quasi_iso(P.phi, N - 1) if include_quasi_iso else None
    passed = all(c.passed for c in checks) and (quasi_iso is None or quasi_iso.passed)
    if not passed:
        failed = [c.check for c in checks if not c.passed]
        logger.warning(f"{P.dgl.name} fails: {failed or ['quasi_iso']}")
    return ProductInvariantReport(subject=P.dgl.name, degree_bound=N, passed=passed,
                                  checks=checks, quasi_iso=quasi_iso)
