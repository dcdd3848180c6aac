"""
Degree-wise Bases of Free Graded Lie Algebras

Spanning set: left-normed brackets [[g1,g2],...,gk] of generator words.
The bracket of a word only involves permutations of the word's letters, so
the span splits into blocks indexed by letter multisets; each block is reduced
to a basis separately by rref on tensor expansions.

Results are cached (lru_cache) keyed on the generator tuple. The cache never
changes results, only avoids recomputing expansions.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from ..errors import DegreeError, UnknownGeneratorError
from .expr import LieExpr, Scaled, Sum, left_normed, render
from .linear import independent_columns, solve_keyed
from .tensor import Generator, TensorElement, bracket

logger = logging.getLogger(__name__)

Multiset = Tuple[Generator, ...]


@dataclass(frozen=True)
class LieBasis:
    """
    Basis of L(gens) in one degree

    Attributes:
        degree: the degree d
        words: generator words whose left-normed brackets form the basis
        elements: the brackets as expressions
        expansions: their tensor normal forms (linearly independent)
    """
    degree: int
    words: Tuple[Multiset, ...]
    elements: Tuple[LieExpr, ...]
    expansions: Tuple[TensorElement, ...]

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[LieExpr]:
        return iter(self.elements)


@lru_cache(maxsize=65536)
def left_normed_expansion(word: Multiset) -> TensorElement:
    """Tensor expansion of [[...[g1,g2],...],gk], sharing prefixes through the cache"""
    if len(word) == 1:
        return word[0].element()
    return bracket(left_normed_expansion(word[:-1]), word[-1].element())


def _multisets(gens: Multiset, degree: int, max_length: Optional[int]) -> Iterator[Multiset]:
    """Non-decreasing index sequences of generators with total degree `degree`"""

    def extend(start: int, remaining: int, chosen: List[Generator]):
        if remaining == 0:
            yield tuple(chosen)
            return
        if max_length is not None and len(chosen) >= max_length:
            return
        for index in range(start, len(gens)):
            g = gens[index]
            if g.degree <= remaining:
                chosen.append(g)
                yield from extend(index, remaining - g.degree, chosen)
                chosen.pop()

    yield from extend(0, degree, [])


@lru_cache(maxsize=65536)
def block_basis(multiset: Multiset, positions: Tuple[int, ...]) -> Tuple[Multiset, ...]:
    """
    Independent left-normed brackets among the permutations of one multiset

    Args:
        multiset: the letters
        positions: index of each letter in the ambient generator order
            (fixes the permutation order)
    """
    order = sorted(range(len(multiset)), key=lambda k: positions[k])
    letters = [positions[k] for k in order]
    by_position = {positions[k]: multiset[k] for k in order}
    candidates = [
        tuple(by_position[p] for p in permutation)
        for permutation in multiset_permutations(letters)
    ]
    expansions = [left_normed_expansion(word).terms for word in candidates]
    return tuple(candidates[k] for k in independent_columns(expansions))


def _block_key(word: Multiset, index: Mapping[str, int]) -> Tuple[int, ...]:
    return tuple(sorted(index[g.id] for g in word))


@lru_cache(maxsize=4096)
def _lie_basis(
    gens: Multiset,
    degree: int,
    max_length: Optional[int],
    containing: Optional[FrozenSet[str]],
) -> LieBasis:
    index = {g.id: k for k, g in enumerate(gens)}
    chosen: List[Multiset] = []
    for multiset in _multisets(gens, degree, max_length):
        if containing is not None and not any(g.id in containing for g in multiset):
            continue
        positions = tuple(index[g.id] for g in multiset)
        chosen.extend(block_basis(multiset, positions))

    # length first, then generator position
    chosen.sort(key=lambda word: (len(word), tuple(index[g.id] for g in word)))
    return LieBasis(
        degree=degree,
        words=tuple(chosen),
        elements=tuple(left_normed(word) for word in chosen),
        expansions=tuple(left_normed_expansion(word) for word in chosen),
    )


def lie_basis(
    gens: Sequence[Generator],
    degree: int,
    max_length: Optional[int] = None,
    containing: Optional[FrozenSet[str]] = None,
) -> LieBasis:
    """
    Basis of L(gens) in degree d

    Args:
        gens: ordered generators (the order fixes the basis order)
        degree: d >= 1
        max_length: optional bound on bracket length
        containing: only brackets involving at least one of these generator
            ids (their span is the ideal generated by those generators)

    Returns:
        LieBasis ordered by bracket length, then lexicographically by
        generator position
    """
    if degree < 1:
        raise DegreeError(f"Lie basis requested in degree {degree}")
    if containing is not None:
        containing = frozenset(containing)
    return _lie_basis(tuple(gens), degree, max_length, containing)


# ============================================================================
# Membership and decomposition
# ============================================================================

def lie_coordinates(
    element: TensorElement,
    alphabet: Mapping[str, Generator],
) -> Optional[List[Tuple[Multiset, Fraction]]]:
    """
    Express a tensor element in left-normed brackets

    Each letter-multiset block of the element is solved independently against
    the block basis, so the cost only depends on the letters that occur.

    Returns:
        [(word, coefficient)] or None when the element is not a Lie element
    """
    if element.is_zero():
        return []

    ordered = list(alphabet)
    index = {gid: k for k, gid in enumerate(ordered)}
    blocks: Dict[Tuple[int, ...], Dict] = defaultdict(dict)
    for word, coefficient in element.items():
        for letter in word:
            if letter not in index:
                raise UnknownGeneratorError(letter)
        key = tuple(sorted(index[letter] for letter in word))
        blocks[key][word] = coefficient

    out: List[Tuple[Multiset, Fraction]] = []
    for key in sorted(blocks):
        multiset = tuple(alphabet[ordered[k]] for k in key)
        candidates = block_basis(multiset, key)
        if not candidates:
            return None
        solution = solve_keyed(
            [left_normed_expansion(word).terms for word in candidates],
            blocks[key],
        )
        if solution is None:
            return None
        out.extend(
            (word, coefficient)
            for word, coefficient in zip(candidates, solution.particular)
            if coefficient
        )
    return out


def is_lie(element: TensorElement, alphabet: Mapping[str, Generator]) -> bool:
    """True iff the tensor element lies in the free Lie algebra"""
    return lie_coordinates(element, alphabet) is not None


def to_lie_expr(element: TensorElement, alphabet: Mapping[str, Generator]) -> Optional[LieExpr]:
    """
    Lie expression with the given expansion

    Returns:
        None for the zero element

    Raises:
        ValueError: element is not a Lie element
    """
    coordinates = lie_coordinates(element, alphabet)
    if coordinates is None:
        raise ValueError(f"Not a Lie element: {element}")
    if not coordinates:
        return None
    terms = tuple(Scaled(coefficient, left_normed(word)) for word, coefficient in coordinates)
    return terms[0] if len(terms) == 1 else Sum(terms)


def render_element(element: TensorElement, alphabet: Mapping[str, Generator]) -> str:
    """Bracket form of a Lie element, falling back to tensor words"""
    try:
        expr = to_lie_expr(element, alphabet)
    except ValueError:
        logger.debug(f"Rendering non-Lie element in tensor form: {element}")
        return str(element)
    return "0" if expr is None else render(expr)
