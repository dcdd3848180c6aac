"""
Homology, Quasi-Isomorphisms and Preimages in Acyclic Kernels

Everything is computed degree by degree on Lie bases: the matrix of d from
degree k to degree k-1 has one column per basis element, rows indexed by
tensor words (or (factor, word) pairs for direct products).
"""

import logging
from typing import Dict, List, Tuple, Union

from pydantic import BaseModel, Field

from ..algebra.basis import lie_basis
from ..algebra.linear import independent_columns, kernel_basis, keyed_matrix, rank, solve_keyed
from ..algebra.tensor import TensorElement
from ..errors import InputNotCycle, InputNotInKernel, InvariantViolation, NoPreimage
from .checks import check_d_squared, render_in
from .dgl import Dgl
from .morphism import DglMorphism, DirectProduct, ProductElement, combine

logger = logging.getLogger(__name__)

Complex = Union[Dgl, DirectProduct]
Element = Union[TensorElement, ProductElement]


class HomologyReport(BaseModel):
    subject: str
    degree_bound: int
    dims: Dict[int, int] = Field(..., description="degree -> dim H_degree")


class QuasiIsoDegree(BaseModel):
    degree: int
    source_dim: int
    target_dim: int
    image_rank: int = Field(..., description="Rank of the induced map in this degree")
    isomorphism: bool


class QuasiIsoReport(BaseModel):
    """Induced map on homology, degree by degree up to the bound"""
    check: str = "quasi_iso"
    subject: str
    degree_bound: int
    passed: bool
    degrees: List[QuasiIsoDegree] = Field(default_factory=list)


def _vector(element: Element) -> Dict:
    return dict(element.items())


def _require_d_squared(complex_: Complex, N: int):
    factors = complex_.factors if isinstance(complex_, DirectProduct) else (complex_,)
    for factor in factors:
        report = check_d_squared(factor, N)
        if not report.passed:
            first = report.violations[0]
            raise InvariantViolation(
                f"d² ≠ 0 in {factor.name}: d(d({first.generator})) = {first.residual}"
            )


class _DegreeData:
    """Basis, cycles and boundaries of one degree of a complex"""

    def __init__(self, complex_: Complex, degree: int):
        self.degree = degree
        self.basis: List[Element] = complex_.basis(degree)
        images = [_vector(complex_.d(b)) for b in self.basis]
        if self.basis:
            matrix, _ = keyed_matrix(images)
            kernel = kernel_basis(matrix)
        else:
            kernel = []
        self.cycles: List[Element] = [
            combine(complex_, zip(vector, self.basis), degree) for vector in kernel
        ]
        above = complex_.basis(degree + 1)
        self.boundaries: List[Element] = [
            b for b in (complex_.d(x) for x in above) if b
        ]

    @property
    def boundary_rank(self) -> int:
        if not self.boundaries:
            return 0
        return len(independent_columns([_vector(b) for b in self.boundaries]))

    @property
    def dimension(self) -> int:
        return len(self.cycles) - self.boundary_rank

    def representatives(self) -> List[Element]:
        """Cycles whose classes form a basis of homology"""
        columns = [_vector(b) for b in self.boundaries] + [_vector(z) for z in self.cycles]
        offset = len(self.boundaries)
        return [self.cycles[k - offset] for k in independent_columns(columns) if k >= offset]


def homology_dims(complex_: Complex, N: int) -> Dict[int, int]:
    """
    dim H_d for 1 <= d <= N

    Raises:
        InvariantViolation: d² ≠ 0 below degree N + 1
    """
    _require_d_squared(complex_, N + 1)
    dims = {d: _DegreeData(complex_, d).dimension for d in range(1, N + 1)}
    logger.debug(f"Homology of {complex_.name} up to {N}: {dims}")
    return dims


def homology_report(complex_: Complex, N: int) -> HomologyReport:
    return HomologyReport(subject=complex_.name, degree_bound=N, dims=homology_dims(complex_, N))


def check_quasi_iso(phi: DglMorphism, N: int) -> QuasiIsoReport:
    """
    Whether phi induces isomorphisms H_d(source) -> H_d(target) for d <= N

    Homology representatives of the source are mapped into the target; the map
    is an isomorphism in degree d iff their images stay independent modulo
    target boundaries and their number equals dim H_d(target).
    """
    entries = []
    for degree in range(1, N + 1):
        source = _DegreeData(phi.source, degree)
        target = _DegreeData(phi.target, degree)
        representatives = source.representatives()
        images = [_vector(phi.apply(z)) for z in representatives]
        boundaries = [_vector(b) for b in target.boundaries]
        boundary_rank = target.boundary_rank
        if images:
            matrix, _ = keyed_matrix(boundaries + images)
            image_rank = rank(matrix) - boundary_rank
        else:
            image_rank = 0
        target_dim = target.dimension
        entries.append(QuasiIsoDegree(
            degree=degree,
            source_dim=len(representatives),
            target_dim=target_dim,
            image_rank=image_rank,
            isomorphism=image_rank == len(representatives) == target_dim,
        ))

    passed = all(entry.isomorphism for entry in entries)
    if not passed:
        first = next(entry for entry in entries if not entry.isomorphism)
        logger.info(f"{phi.name} is not a quasi-isomorphism in degree {first.degree}")
    return QuasiIsoReport(subject=phi.name, degree_bound=N, passed=passed, degrees=entries)


def preimage_in_kernel(phi: DglMorphism, c: TensorElement) -> TensorElement:
    """
    tau in ker(phi) with d(tau) = c

    Solves the stacked system [d; phi] x = [c; 0] over the Lie basis of the
    source in degree |c| + 1; free variables are set to zero. Columns are
    ordered longest bracket first, so tau has no linear part unless every
    solution needs one.

    Raises:
        InputNotCycle: d(c) != 0
        InputNotInKernel: phi(c) != 0
        NoPreimage: the kernel of phi is not acyclic in this degree
    """
    source = phi.source
    if c.is_zero():
        degree = c.degree + 1 if c.degree is not None else None
        return TensorElement.zero(degree)
    if source.d(c):
        raise InputNotCycle(f"{render_in(source, c)} is not a cycle of {source.name}")
    if phi.apply(c):
        raise InputNotInKernel(f"{render_in(source, c)} is not in the kernel of {phi.name}")

    candidates = lie_basis(source.generators, c.degree + 1)
    order = sorted(range(len(candidates)), key=lambda k: (-len(candidates.words[k]), k))
    basis = [candidates.expansions[k] for k in order]
    columns = []
    for b in basis:
        column = {("d", word): value for word, value in source.d(b).items()}
        column.update({("phi", key): value for key, value in phi.apply(b).items()})
        columns.append(column)
    target = {("d", word): value for word, value in c.items()}

    solution = solve_keyed(columns, target)
    if solution is None:
        raise NoPreimage(
            f"No preimage of {render_in(source, c)} in ker({phi.name}) "
            f"(degree {c.degree + 1}); the kernel is not acyclic"
        )
    tau = TensorElement.combine(zip(solution.particular, basis), c.degree + 1)
    logger.debug(f"preimage in ker({phi.name}) of degree {c.degree + 1}: {len(tau)} word(s)")
    return tau


def cycles_and_boundaries(complex_: Complex, degree: int) -> Tuple[List[Element], List[Element]]:
    """(cycle basis, boundary spanning set) of one degree"""
    data = _DegreeData(complex_, degree)
    return data.cycles, data.boundaries


def homology_representatives(complex_: Complex, degree: int) -> List[Element]:
    return _DegreeData(complex_, degree).representatives()
