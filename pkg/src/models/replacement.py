"""
Cofibration Replacement

Factor a morphism f: L(V) -> T as a free extension L(V) ↪ L(V ⊕ W) followed
by a quasi-isomorphism rho: L(V ⊕ W) -> T with rho|V = f.

Two strategies:

- change of generators: when the linear parts of the f(v) are independent in
  every degree, the unused target generators W complete them to a basis.
  theta: v -> f(v), w -> w is then an isomorphism of free Lie algebras and
  d(w) = theta^{-1}(dw). The result is minimal whenever T is.
- homology killing: degree by degree, adjoin generators whose differential
  kills the kernel of H(f), then cycle generators surjecting onto the missing
  target homology. Minimality is reported, not guaranteed.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Set

from ..algebra.basis import lie_basis
from ..algebra.linear import SparseMatrix, independent_columns, kernel_basis, keyed_matrix, rref, solve_keyed
from ..algebra.tensor import Generator, TensorElement
from ..dgl.checks import check_chain_map
from ..dgl.dgl import Dgl
from ..dgl.homology import check_quasi_iso, cycles_and_boundaries, homology_representatives
from ..dgl.morphism import DglMorphism, evaluate
from ..errors import InputError, InvariantViolation, StabilizationFailure
from .fatwedge import MapModel

logger = logging.getLogger(__name__)

Strategy = Literal["auto", "change_of_generators", "homology_killing"]


@dataclass
class Replacement:
    """
    Attributes:
        map_model: L(V) ↪ L(V ⊕ W)
        rho: quasi-isomorphism L(V ⊕ W) -> target with rho|V = f
        strategy: "change_of_generators" or "homology_killing"
        minimal: whether the resulting differential has no linear part
    """
    map_model: MapModel
    rho: DglMorphism
    strategy: str
    minimal: bool


def _fresh_ids(count: int, taken: Set[str], prefix: str = "u") -> List[str]:
    out, k = [], 1
    while len(out) < count:
        candidate = f"{prefix}{k}"
        if candidate not in taken:
            out.append(candidate)
            taken.add(candidate)
        k += 1
    return out


# ============================================================================
# Change of generators
# ============================================================================

def _complement(f: DglMorphism) -> Optional[List[Generator]]:
    """Target generators completing the linear parts of f(V) to a basis, or None"""
    source, target = f.source, f.target
    complement: List[Generator] = []
    degrees = sorted({g.degree for g in source.generators} | {g.degree for g in target.generators})
    for degree in degrees:
        columns = [g.id for g in target.generators if g.degree == degree]
        position = {gid: k for k, gid in enumerate(columns)}
        rows = [v for v in source.generators if v.degree == degree]
        entries = [
            (r, position[word[0]], c)
            for r, v in enumerate(rows)
            for word, c in f.image(v.id).linear_part().items()
        ]
        _, pivots = rref(SparseMatrix(len(rows), len(columns), tuple(entries)))
        if len(pivots) < len(rows):
            return None
        pivot_set = set(pivots)
        complement.extend(
            target.generator(gid) for k, gid in enumerate(columns) if k not in pivot_set
        )
    return complement


def _change_of_generators(f: DglMorphism) -> Optional[Replacement]:
    source, target = f.source, f.target
    complement = _complement(f)
    if complement is None:
        return None

    taken = set(source.ids) | {g.id for g in complement}
    clashes = [g.id for g in complement if g.id in source or "@" in g.id or "{" in g.id]
    fresh = dict(zip(clashes, _fresh_ids(len(clashes), taken)))
    renamed = {
        g.id: Generator(fresh[g.id], g.degree) if g.id in fresh else g
        for g in complement
    }

    generators = tuple(source.generators) + tuple(renamed[g.id] for g in complement)
    theta: Dict[str, TensorElement] = {v.id: f.image(v.id) for v in source.generators}
    theta.update({renamed[g.id].id: g.element() for g in complement})

    inverse: Dict[str, TensorElement] = {g.id: renamed[g.id].element() for g in complement}
    for z in sorted(target.generators, key=lambda h: h.degree):
        if z.id in inverse:
            continue
        basis = lie_basis(generators, z.degree)
        columns = [dict(evaluate(b, theta, target).items()) for b in basis.expansions]
        solution = solve_keyed(columns, dict(z.element().items()))
        if solution is None:
            return None
        inverse[z.id] = TensorElement.combine(zip(solution.particular, basis.expansions), z.degree)

    differential = {v.id: source.differential(v.id) for v in source.generators}
    for g in complement:
        differential[renamed[g.id].id] = evaluate(target.differential(g.id), inverse, target)
    model = Dgl(generators, differential, name=target.name)

    return Replacement(
        map_model=MapModel(model, frozenset(source.ids)),
        rho=DglMorphism(model, target, theta, name="rho"),
        strategy="change_of_generators",
        minimal=model.is_minimal(),
    )


# ============================================================================
# Homology killing
# ============================================================================

def _homology_killing(f: DglMorphism, N: int) -> Replacement:
    source, target = f.source, f.target
    generators: List[Generator] = list(source.generators)
    differential: Dict[str, TensorElement] = dict(source.differentials)
    images: Dict[str, TensorElement] = {v.id: f.image(v.id) for v in source.generators}
    taken = set(source.ids) | set(target.ids)

    def current() -> DglMorphism:
        model = Dgl(generators, differential, name=f"{target.name}|{source.name}")
        return DglMorphism(model, target, images, name="rho")

    def adjoin(degree: int, boundary: TensorElement, image: TensorElement):
        (gid,) = _fresh_ids(1, taken, prefix="w")
        generators.append(Generator(gid, degree))
        if boundary:
            differential[gid] = boundary
        images[gid] = image

    for degree in range(1, N + 2):
        if degree >= 2:
            rho = current()
            representatives = homology_representatives(rho.source, degree - 1)
            if representatives:
                fillers = target.basis(degree)
                columns = [dict(rho.apply(z).items()) for z in representatives]
                columns += [dict(target.d(b).items()) for b in fillers]
                matrix, _ = keyed_matrix(columns)
                kernel = kernel_basis(matrix)
                k = len(representatives)
                projections = [{i: c for i, c in enumerate(vector[:k]) if c} for vector in kernel]
                for index in independent_columns(projections):
                    vector = kernel[index]
                    boundary = TensorElement.combine(zip(vector[:k], representatives), degree - 1)
                    filler = TensorElement.combine(
                        ((-c, b) for c, b in zip(vector[k:], fillers)), degree
                    )
                    adjoin(degree, boundary, filler)
                    logger.debug(f"Killed a class of degree {degree - 1}")
        if degree > N:
            break

        rho = current()
        cycles, _ = cycles_and_boundaries(rho.source, degree)
        target_cycles, target_boundaries = cycles_and_boundaries(target, degree)
        columns = [dict(b.items()) for b in target_boundaries]
        columns += [dict(rho.apply(z).items()) for z in cycles]
        offset = len(columns)
        columns += [dict(z.items()) for z in target_cycles]
        for index in independent_columns(columns):
            if index >= offset:
                adjoin(degree, TensorElement.zero(degree - 1), target_cycles[index - offset])
                logger.debug(f"Added a cycle generator in degree {degree}")

    rho = current()
    report = check_quasi_iso(rho, N)
    if not report.passed:
        first = next(entry for entry in report.degrees if not entry.isomorphism)
        raise StabilizationFailure(first.degree, "induced map on homology is not an isomorphism")

    model = rho.source
    minimal = model.is_minimal()
    if not minimal:
        logger.warning(f"Replacement of {f.name} is not minimal")
    return Replacement(
        map_model=MapModel(model, frozenset(source.ids)),
        rho=rho,
        strategy="homology_killing",
        minimal=minimal,
    )


def cofibration_replacement(f: DglMorphism, N: int, strategy: Strategy = "auto") -> Replacement:
    """
    Replace f by a free extension followed by a quasi-isomorphism

    Raises:
        InvariantViolation: f is not a chain map, or the requested strategy
            does not apply
        StabilizationFailure: homology killing did not produce a
            quasi-isomorphism up to N
    """
    if not isinstance(f.target, Dgl):
        raise InputError("Cofibration replacement needs a morphism into a Dgl")
    source = f.source.truncate(N)
    target = f.target.truncate(N)
    f = DglMorphism(source, target, {v.id: f.image(v.id) for v in source.generators}, name=f.name)

    report = check_chain_map(f, N)
    if not report.passed:
        raise InvariantViolation(f"{f.name} is not a chain map on {report.violations[0].generator}")

    if strategy in ("auto", "change_of_generators"):
        replacement = _change_of_generators(f)
        if replacement is not None:
            logger.info(f"Replaced {f.name} by a change of generators ({len(replacement.map_model.relative_ids)} in W)")
            return replacement
        if strategy == "change_of_generators":
            raise InvariantViolation(f"Linear parts of {f.name} are not independent")
    return _homology_killing(f, N)
