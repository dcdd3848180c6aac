"""
Certificate Search

find_alpha walks the generators of L(V ⊕ W) in increasing degree. For a of
degree d, alpha(a) = a@1 + ... + a@(n+1) + xi_a and the chain-map condition

    D(xi_a) = alpha(da) - D(a@1 + ... + a@(n+1))

is linear in xi_a once the lower images are fixed. xi_a ranges over the Lie
basis of the U-ideal of the kept algebra in degree d.

When a solve has a kernel, later constraints depend on the choice along it.
The search tries the particular solution first, then kernel moves of growing
support with coefficients from SearchOptions.coefficients, depth first, until
the branch budget runs out; seeded randomized restarts follow. A failure is
exhaustive only when no explored solve had a kernel and the budget was not
hit: the candidate was then unique at every step.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..algebra.basis import lie_basis, render_element
from ..algebra.linear import solve_keyed
from ..algebra.tensor import Generator, TensorElement
from ..dgl.morphism import DglMorphism, evaluate
from ..models.fatwedge import FatWedgeModel, fat_wedge_model
from ..models.naming import copy_id
from .problem import SecatProblem, SolveRecord

logger = logging.getLogger(__name__)


@dataclass
class Certificate:
    """
    A dgl map alpha of the required shape

    Attributes:
        problem: the problem it solves
        fat_wedge: the fat-wedge model alpha lands in
        alpha: L(V ⊕ W) -> kept algebra
        transcript: one solve record per generator, along the successful branch
        explored: branch nodes visited
    """
    problem: SecatProblem
    fat_wedge: FatWedgeModel
    alpha: DglMorphism
    transcript: List[SolveRecord] = field(default_factory=list)
    explored: int = 0


@dataclass
class NoCertificate:
    """
    Search failure

    exhaustive=True means no strict chain map of the required shape exists up
    to the degree bound; otherwise the outcome is inconclusive.
    """
    problem: SecatProblem
    reason: str
    exhaustive: bool
    generator: Optional[str] = None
    residual: Optional[str] = None
    transcript: List[SolveRecord] = field(default_factory=list)
    explored: int = 0


Outcome = Union[Certificate, NoCertificate]


@dataclass
class _Step:
    """Solution space of one generator given the lower images"""
    generator: Generator
    base: Optional[TensorElement]
    unknowns: int
    residual: Optional[TensorElement] = None
    particular: Sequence[Fraction] = ()
    kernel: Sequence[Sequence[Fraction]] = ()
    expansions: Sequence[TensorElement] = ()

    @property
    def consistent(self) -> bool:
        return self.base is not None and self.residual is None

    def xi(self, choice: Sequence[int]) -> TensorElement:
        coefficients = list(self.particular)
        for c, vector in zip(choice, self.kernel):
            if c:
                coefficients = [a + c * b for a, b in zip(coefficients, vector)]
        return TensorElement.combine(zip(coefficients, self.expansions), self.generator.degree)


class _Search:
    def __init__(self, problem: SecatProblem, fat_wedge: FatWedgeModel):
        self.problem = problem
        self.options = problem.options
        self.fat_wedge = fat_wedge
        self.kept = fat_wedge.kept
        self.source = problem.map_model.dgl.truncate(problem.N)
        self.order = sorted(self.source.generators, key=lambda g: g.degree)
        self.explored = 0
        self.kernel_seen = False
        self.budget_hit = False
        self.failure: Optional[Tuple[int, _Step, List[Tuple[_Step, Tuple[int, ...]]]]] = None
        self._systems: Dict[int, Tuple[Tuple[TensorElement, ...], List[Dict]]] = {}

    # ------------------------------------------------------------------
    # Linear systems
    # ------------------------------------------------------------------

    def copies(self, g: Generator) -> Optional[TensorElement]:
        """a@1 + ... + a@(n+1), or None when some copy is not kept"""
        n = self.problem.n
        ids = [g.id] if n == 0 else [copy_id(g.id, i) for i in range(1, n + 2)]
        if any(gid not in self.kept for gid in ids):
            return None
        return TensorElement.combine(((1, self.kept.element(gid)) for gid in ids), g.degree)

    def system(self, degree: int) -> Tuple[Tuple[TensorElement, ...], List[Dict]]:
        if degree not in self._systems:
            if self.fat_wedge.u_ids:
                expansions = lie_basis(self.kept.generators, degree,
                                       containing=self.fat_wedge.u_ids).expansions
            else:
                expansions = ()
            columns = [dict(self.kept.d(b).items()) for b in expansions]
            self._systems[degree] = (expansions, columns)
            logger.debug(f"{len(expansions)} unknown(s) in degree {degree}")
        return self._systems[degree]

    def solve(self, g: Generator, images: Dict[str, TensorElement]) -> _Step:
        base = self.copies(g)
        if base is None:
            return _Step(generator=g, base=None, unknowns=0)
        rhs = evaluate(self.source.differential(g.id), images, self.kept) - self.kept.d(base)
        expansions, columns = self.system(g.degree)
        if not expansions:
            if rhs:
                return _Step(generator=g, base=base, unknowns=0, residual=rhs)
            return _Step(generator=g, base=base, unknowns=0)
        solution = solve_keyed(columns, dict(rhs.items()))
        if solution is None:
            return _Step(generator=g, base=base, unknowns=len(expansions), residual=rhs)
        return _Step(generator=g, base=base, unknowns=len(expansions),
                     particular=solution.particular, kernel=solution.kernel, expansions=expansions)

    # ------------------------------------------------------------------
    # Branching
    # ------------------------------------------------------------------

    def moves(self, dimension: int) -> Iterator[Tuple[int, ...]]:
        """Zero move, then kernel combinations by growing support"""
        yield (0,) * dimension
        if self.options.strategy == "greedy":
            return
        nonzero = [c for c in self.options.coefficients if c]
        for size in range(1, dimension + 1):
            for support in itertools.combinations(range(dimension), size):
                for values in itertools.product(nonzero, repeat=size):
                    choice = [0] * dimension
                    for k, c in zip(support, values):
                        choice[k] = c
                    yield tuple(choice)

    def note_failure(self, depth: int, step: _Step, path: List[Tuple[_Step, Tuple[int, ...]]]):
        if self.failure is None or depth > self.failure[0]:
            self.failure = (depth, step, list(path))

    def dfs(self, depth: int, images: Dict[str, TensorElement],
            path: List[Tuple[_Step, Tuple[int, ...]]]) -> Optional[List[Tuple[_Step, Tuple[int, ...]]]]:
        if depth == len(self.order):
            return path
        if self.explored >= self.options.budget:
            self.budget_hit = True
            return None
        self.explored += 1

        g = self.order[depth]
        step = self.solve(g, images)
        if not step.consistent:
            self.note_failure(depth, step, path)
            return None
        if step.kernel:
            self.kernel_seen = True

        for choice in self.moves(len(step.kernel)):
            images[g.id] = step.base + step.xi(choice)
            path.append((step, choice))
            found = self.dfs(depth + 1, images, path)
            if found is not None:
                return found
            path.pop()
            if self.budget_hit:
                break
        del images[g.id]
        return None

    def restart(self, rng: random.Random) -> Optional[List[Tuple[_Step, Tuple[int, ...]]]]:
        """One randomized greedy pass"""
        images: Dict[str, TensorElement] = {}
        path: List[Tuple[_Step, Tuple[int, ...]]] = []
        for depth, g in enumerate(self.order):
            self.explored += 1
            step = self.solve(g, images)
            if not step.consistent:
                self.note_failure(depth, step, path)
                return None
            choice = tuple(rng.choice(self.options.coefficients) for _ in step.kernel)
            images[g.id] = step.base + step.xi(choice)
            path.append((step, choice))
        return path

    # ------------------------------------------------------------------
    # Transcripts
    # ------------------------------------------------------------------

    def record(self, step: _Step, choice: Tuple[int, ...] = ()) -> SolveRecord:
        alphabet = self.kept.alphabet
        record = SolveRecord(
            generator=step.generator.id,
            degree=step.generator.degree,
            unknowns=step.unknowns,
            kernel_dim=len(step.kernel),
            consistent=step.consistent,
            choice=list(choice),
        )
        if step.consistent:
            record.xi = render_element(step.xi(choice), alphabet)
        elif step.residual is not None:
            record.residual = render_element(step.residual, alphabet)
        return record

    def run(self) -> Outcome:
        p = self.problem
        logger.info(f"Searching alpha for n={p.n} over {len(self.order)} generator(s)")
        path = self.dfs(0, {}, [])
        exhaustive = not self.kernel_seen and not self.budget_hit

        if path is None and not exhaustive:
            rng = random.Random(self.options.seed)
            for attempt in range(self.options.restarts):
                path = self.restart(rng)
                if path is not None:
                    logger.info(f"Restart {attempt + 1} found a certificate")
                    break

        if path is not None:
            images = {step.generator.id: step.base + step.xi(choice) for step, choice in path}
            alpha = DglMorphism(self.source, self.kept, images, name="alpha")
            logger.info(f"Certificate for n={p.n} after {self.explored} node(s)")
            return Certificate(problem=p, fat_wedge=self.fat_wedge, alpha=alpha,
                               transcript=[self.record(s, c) for s, c in path],
                               explored=self.explored)

        if self.failure is None:
            reason = f"branch budget of {self.options.budget} exhausted"
            logger.info(f"No certificate for n={p.n} (inconclusive): {reason}")
            return NoCertificate(problem=p, reason=reason, exhaustive=False, explored=self.explored)

        _, step, failed_path = self.failure
        transcript = [self.record(s, c) for s, c in failed_path] + [self.record(step)]
        if step.base is None:
            reason = f"the copies of {step.generator.id} are not in the fat wedge"
        elif self.budget_hit:
            reason = f"branch budget of {self.options.budget} exhausted"
        else:
            reason = f"no solution for xi_{step.generator.id}"
        residual = transcript[-1].residual
        logger.info(
            f"No certificate for n={p.n} ({'exhaustive' if exhaustive else 'inconclusive'}): {reason}"
        )
        return NoCertificate(problem=p, reason=reason, exhaustive=exhaustive,
                             generator=step.generator.id, residual=residual,
                             transcript=transcript, explored=self.explored)


def find_alpha(problem: SecatProblem, fat_wedge: Optional[FatWedgeModel] = None) -> Outcome:
    """
    Search a dgl map L(V ⊕ W) -> fat-wedge model with the prescribed shape

    Args:
        problem: map model, n, degree bound and search options
        fat_wedge: prebuilt fat_wedge_model(M, n, N) (built when omitted)

    Raises:
        ClosureViolation: the fat-wedge sub-dgl is not closed under D
    """
    if fat_wedge is None:
        fat_wedge = fat_wedge_model(problem.map_model, problem.n, problem.N)
    return _Search(problem, fat_wedge).run()
