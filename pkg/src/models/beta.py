"""
Beta Correction

For xi in the mixed ideal L+(V)*L+(W) of a product stage, produce beta(xi) in
the ideal I_s generated by the suspension generators with

    D(beta(xi)) = xi + D+(beta(xi)),   D+(beta(xi)) in I_s

xi is written in left-normed brackets [[g1,g2],g3,...,gk] whose first two
letters come from different sides; such a bracket maps to
[[±s(g1⊗g2),g3],...,gk]. The spanning set is complete: the first two letters
of every mixed left-normed bracket can be made mixed by Jacobi moves, and rref
handles the dependencies.

The pairing abstracts which generators are "sides" (V, W, or copies 1..n of
the n-fold power model) and how two letters of different sides suspend.
"""

import logging
from collections import defaultdict
from typing import Dict, Optional, Protocol, Tuple

from sympy.utilities.iterables import multiset_permutations

from ..algebra.basis import left_normed_expansion
from ..algebra.linear import solve_keyed
from ..algebra.tensor import Generator, TensorElement, bracket
from ..dgl.dgl import Dgl
from ..errors import BetaInputError, InvariantViolation

logger = logging.getLogger(__name__)


class Pairing(Protocol):
    def side(self, generator_id: str) -> Optional[int]:
        """Side of a generator, None for ideal (suspension) generators"""

    def suspend(self, a: Generator, b: Generator) -> Tuple[str, int]:
        """(id of the generator for a ⊗ b, sign) with D(sign * s) = [a,b] + ideal terms"""


def _beta_of_word(L: Dgl, pairing: Pairing, word: Tuple[Generator, ...]) -> TensorElement:
    s_id, sign = pairing.suspend(word[0], word[1])
    result = L.element(s_id).scale(sign)
    for g in word[2:]:
        result = bracket(result, g.element())
    return result


def beta(L: Dgl, pairing: Pairing, xi: TensorElement) -> Tuple[TensorElement, TensorElement]:
    """
    (beta(xi), D+(beta(xi)))

    Raises:
        BetaInputError: xi has a word with an ideal letter, a single-sided
            word, or is not a Lie element
    """
    if xi.is_zero():
        degree = xi.degree + 1 if xi.degree is not None else None
        return TensorElement.zero(degree), TensorElement.zero(xi.degree)

    blocks: Dict[Tuple[str, ...], Dict] = defaultdict(dict)
    for word, coefficient in xi.items():
        sides = [pairing.side(letter) for letter in word]
        if any(side is None for side in sides):
            raise BetaInputError(f"Word {'.'.join(word)} contains a suspension generator")
        if len(set(sides)) < 2:
            raise BetaInputError(f"Word {'.'.join(word)} does not mix two sides")
        blocks[tuple(sorted(word))][word] = coefficient

    order = {gid: k for k, gid in enumerate(L.ids)}
    pieces = []
    for key in sorted(blocks):
        letters = sorted(key, key=order.__getitem__)
        candidates = [
            tuple(L.generator(gid) for gid in permutation)
            for permutation in multiset_permutations(letters)
            if pairing.side(permutation[0]) != pairing.side(permutation[1])
        ]
        solution = solve_keyed(
            [left_normed_expansion(word).terms for word in candidates],
            blocks[key],
        )
        if solution is None:
            raise BetaInputError(f"{xi} is not a Lie element of the mixed ideal")
        pieces.extend(
            (coefficient, _beta_of_word(L, pairing, word))
            for word, coefficient in zip(candidates, solution.particular)
            if coefficient
        )

    result = TensorElement.combine(pieces, xi.degree + 1)
    correction = L.d(result) - xi
    for word in correction.words():
        if all(pairing.side(letter) is not None for letter in word):
            raise InvariantViolation(f"beta correction left the ideal: word {'.'.join(word)}")
    return result, correction
