"""
Free Differential Graded Lie Algebras

A Dgl is a free graded Lie algebra L(gens) together with a differential given
on generators and extended as a derivation:

    d[a,b] = [da,b] + (-1)^{|a|}[a,db]

In tensor normal form the same rule reads
d(g1⊗...⊗gk) = sum_i (-1)^{|g1|+...+|g_{i-1}|} g1⊗...⊗d(gi)⊗...⊗gk.

Each generator carries a cone-length stage m with d(V_m) ⊂ L(V_{<m}); stages
are inferred (0 for cycles, 1 + max stage of the letters of dg otherwise)
unless given explicitly.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from ..algebra.basis import lie_basis
from ..algebra.tensor import Generator, TensorElement, koszul_sign
from ..errors import ClosureViolation, DegreeError, InputError, UnknownGeneratorError

logger = logging.getLogger(__name__)


class Dgl:
    """
    (L(gens), d) with d specified on generators

    Args:
        generators: ordered generators (ids unique)
        differential: id -> element of degree |g| - 1 (missing ids mean dg = 0)
        name: model name used in reports and model files
        stages: optional explicit stage tags (validated against d)
        omitted: generators a degree-bounded construction did not build
    """

    def __init__(
        self,
        generators: Sequence[Generator],
        differential: Optional[Mapping[str, TensorElement]] = None,
        name: str = "L",
        stages: Optional[Mapping[str, int]] = None,
        omitted: Sequence[Generator] = (),
    ):
        self.name = name
        self._generators = tuple(generators)
        self._index: Dict[str, Generator] = {}
        for g in self._generators:
            if g.id in self._index:
                raise InputError(f"Duplicate generator id '{g.id}' in {name}")
            self._index[g.id] = g

        self._differential: Dict[str, TensorElement] = {}
        for gid, element in (differential or {}).items():
            if gid not in self._index:
                raise UnknownGeneratorError(gid)
            if element:
                self._validate_differential(self._index[gid], element)
                self._differential[gid] = TensorElement(element.terms, self._index[gid].degree - 1)

        self._stages = self._compute_stages(stages or {})

        self.omitted = tuple(omitted)

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def _validate_differential(self, g: Generator, element: TensorElement):
        expected = g.degree - 1
        for word in element.words():
            degree = 0
            for letter in word:
                if letter not in self._index:
                    raise UnknownGeneratorError(letter)
                degree += self._index[letter].degree
            if degree != expected:
                raise DegreeError(
                    f"d({g.id}) must have degree {expected}, found a term of degree {degree}"
                )

    def _compute_stages(self, tags: Mapping[str, int]) -> Dict[str, int]:
        """Explicit tags where given, otherwise 0 for cycles and 1 + max stage of the letters of dg"""
        for gid, stage in tags.items():
            if gid not in self._index:
                raise UnknownGeneratorError(gid)
            if stage < 0:
                raise InputError(f"Negative stage {stage} for {gid}")
        stages: Dict[str, int] = {}
        for g in sorted(self._generators, key=lambda h: h.degree):
            dg = self._differential.get(g.id)
            if g.id in tags:
                stages[g.id] = tags[g.id]
            elif not dg:
                stages[g.id] = 0
            else:
                stages[g.id] = 1 + max(stages[letter] for letter in dg.letters())
        for gid, dg in self._differential.items():
            for letter in dg.letters():
                if stages[letter] >= stages[gid]:
                    raise InputError(
                        f"Stage tags violate d(V_m) ⊂ L(V_<m): d({gid}) at stage {stages[gid]} "
                        f"uses {letter} at stage {stages[letter]}"
                    )
        return {g.id: stages[g.id] for g in self._generators}

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def generators(self) -> tuple:
        return self._generators

    @property
    def ids(self) -> List[str]:
        return [g.id for g in self._generators]

    @property
    def alphabet(self) -> Dict[str, Generator]:
        return dict(self._index)

    @property
    def stages(self) -> Dict[str, int]:
        return dict(self._stages)

    def __contains__(self, gid: str) -> bool:
        return gid in self._index

    def __len__(self) -> int:
        return len(self._generators)

    def generator(self, gid: str) -> Generator:
        try:
            return self._index[gid]
        except KeyError:
            raise UnknownGeneratorError(gid) from None

    def stage(self, gid: str) -> int:
        return self._stages[self.generator(gid).id]

    def differential(self, gid: str) -> TensorElement:
        """d(g) (zero element of degree |g| - 1 when unspecified)"""
        g = self.generator(gid)
        return self._differential.get(gid, TensorElement.zero(g.degree - 1))

    @property
    def differentials(self) -> Dict[str, TensorElement]:
        """Nonzero differentials only"""
        return dict(self._differential)

    def element(self, gid: str) -> TensorElement:
        return self.generator(gid).element()

    def zero(self, degree: Optional[int] = None) -> TensorElement:
        return TensorElement.zero(degree)

    def max_degree(self) -> int:
        return max((g.degree for g in self._generators), default=0)

    # ------------------------------------------------------------------
    # Differential
    # ------------------------------------------------------------------

    def d(self, e: TensorElement) -> TensorElement:
        """Derivation extension of the differential"""
        out: Dict[tuple, Fraction] = defaultdict(Fraction)
        for word, coefficient in e.items():
            prefix_degree = 0
            for i, letter in enumerate(word):
                g = self._index.get(letter)
                if g is None:
                    raise UnknownGeneratorError(letter)
                dg = self._differential.get(letter)
                if dg:
                    sign = koszul_sign(prefix_degree)
                    head, tail = word[:i], word[i + 1:]
                    for inner, value in dg.items():
                        out[head + inner + tail] += sign * coefficient * value
                prefix_degree += g.degree
        degree = e.degree - 1 if e.degree is not None else None
        return TensorElement(out, degree)

    def basis(self, degree: int) -> List[TensorElement]:
        """Expansions of a Lie basis of L(gens) in one degree"""
        if degree < 1 or not self._generators:
            return []
        return list(lie_basis(self._generators, degree).expansions)

    def is_minimal(self) -> bool:
        """True iff no differential has a linear part"""
        return not any(dg.linear_part() for dg in self._differential.values())

    # ------------------------------------------------------------------
    # Derived models
    # ------------------------------------------------------------------

    def sub_dgl(self, ids: Iterable[str], name: Optional[str] = None) -> "Dgl":
        """
        Sub-dgl generated by a subset of the generators

        Raises:
            ClosureViolation: some kept differential uses a dropped generator
        """
        keep = set(ids)
        for gid in keep:
            self.generator(gid)
        for gid in keep:
            dg = self._differential.get(gid)
            if not dg:
                continue
            for word in dg.words():
                if any(letter not in keep for letter in word):
                    raise ClosureViolation(gid, word)
        return Dgl(
            [g for g in self._generators if g.id in keep],
            {gid: dg for gid, dg in self._differential.items() if gid in keep},
            name=name or self.name,
            stages={gid: s for gid, s in self._stages.items() if gid in keep},
            omitted=self.omitted,
        )

    def truncate(self, max_degree: int) -> "Dgl":
        """Sub-dgl of generators of degree <= max_degree; the rest join omitted"""
        if self.max_degree() <= max_degree:
            return self
        sub = self.sub_dgl([g.id for g in self._generators if g.degree <= max_degree])
        sub.omitted = self.omitted + tuple(g for g in self._generators if g.degree > max_degree)
        return sub

    def extend(
        self,
        generators: Sequence[Generator],
        differential: Mapping[str, TensorElement],
        omitted: Sequence[Generator] = (),
    ) -> "Dgl":
        """New Dgl with extra generators appended"""
        merged = dict(self._differential)
        merged.update(differential)
        return Dgl(
            self._generators + tuple(generators),
            merged,
            name=self.name,
            omitted=self.omitted + tuple(omitted),
        )

    def rename(self, mapping: Mapping[str, Generator], name: Optional[str] = None) -> "Dgl":
        """Relabel every generator (mapping old id -> new generator of equal degree)"""
        ids = {old: new.id for old, new in mapping.items()}
        for g in self._generators:
            if mapping[g.id].degree != g.degree:
                raise DegreeError(f"Relabelling {g.id} changes its degree")
        return Dgl(
            [mapping[g.id] for g in self._generators],
            {ids[gid]: dg.rename(ids) for gid, dg in self._differential.items()},
            name=name or self.name,
            stages={ids[gid]: s for gid, s in self._stages.items()},
        )

    def reorder(self, key) -> "Dgl":
        """Same model with generators sorted by key"""
        return Dgl(
            sorted(self._generators, key=key),
            self._differential,
            name=self.name,
            stages=self._stages,
            omitted=self.omitted,
        )

    # ------------------------------------------------------------------
    # Comparison / display
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dgl):
            return NotImplemented
        return (
            self.name == other.name
            and self._generators == other._generators
            and self._differential == other._differential
            and self._stages == other._stages
            and self.omitted == other.omitted
        )

    __hash__ = None

    def __repr__(self) -> str:
        gens = ", ".join(f"{g.id}:{g.degree}" for g in self._generators)
        return f"Dgl({self.name}; {gens})"
