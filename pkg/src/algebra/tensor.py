"""
Tensor Algebra Normal Form

Elements of the free graded Lie algebra L(V) are stored through the embedding
L(V) ⊂ T(V), [a,b] = a⊗b - (-1)^{|a||b|} b⊗a, as rational combinations of
tensor words. Words are tuples of generator ids; an element carries its degree
so brackets can compute Koszul signs without looking up an alphabet.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from ..errors import DegreeError, MixedDegreeError

Word = Tuple[str, ...]


def koszul_sign(exponent: int) -> int:
    """(-1)^exponent"""
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class Generator:
    """
    A named free generator

    Attributes:
        id: short identifier, unique within a model
        degree: Quillen degree (topological degree - 1), at least 1
    """
    id: str
    degree: int

    def __post_init__(self):
        if not self.id:
            raise DegreeError("Generator id must be non-empty")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise DegreeError(
                f"Generator '{self.id}' has degree {self.degree}; "
                f"only simply connected models (degree >= 1) are supported"
            )

    def element(self) -> "TensorElement":
        """The generator as a one-letter tensor element"""
        return TensorElement({(self.id,): Fraction(1)}, self.degree)


class TensorElement:
    """
    Rational combination of tensor words of one degree

    Zero coefficients are never stored. The zero element may carry a degree
    (useful for homogeneity bookkeeping) or none.
    """

    __slots__ = ("_terms", "_degree", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, object]] = None, degree: Optional[int] = None):
        cleaned: Dict[Word, Fraction] = {}
        for word, coefficient in (terms or {}).items():
            coefficient = Fraction(coefficient)
            if coefficient:
                cleaned[tuple(word)] = coefficient
        self._terms = cleaned
        self._degree = degree
        self._hash = None

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, degree: Optional[int] = None) -> "TensorElement":
        return cls({}, degree)

    @classmethod
    def combine(cls, pairs: Iterable[Tuple[Fraction, "TensorElement"]], degree: Optional[int] = None) -> "TensorElement":
        """Linear combination sum(c * e) without intermediate objects"""
        out: Dict[Word, Fraction] = defaultdict(Fraction)
        for coefficient, element in pairs:
            if not coefficient:
                continue
            if degree is None and element:
                degree = element.degree
            for word, value in element._terms.items():
                out[word] += coefficient * value
        return cls(out, degree)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def degree(self) -> Optional[int]:
        return self._degree

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def words(self) -> Iterator[Word]:
        return iter(self._terms)

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def letters(self) -> set:
        return {letter for word in self._terms for letter in word}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _sum_degree(self, other: "TensorElement") -> Optional[int]:
        if self._terms and other._terms and self._degree != other._degree:
            raise MixedDegreeError(
                f"Cannot add elements of degrees {self._degree} and {other._degree}"
            )
        if self._terms:
            return self._degree
        if other._terms:
            return other._degree
        return self._degree if self._degree is not None else other._degree

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        degree = self._sum_degree(other)
        out = dict(self._terms)
        for word, value in other._terms.items():
            out[word] = out.get(word, Fraction(0)) + value
        return TensorElement(out, degree)

    def __neg__(self) -> "TensorElement":
        return TensorElement({w: -c for w, c in self._terms.items()}, self._degree)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coefficient) -> "TensorElement":
        coefficient = Fraction(coefficient)
        if not coefficient:
            return TensorElement.zero(self._degree)
        return TensorElement({w: coefficient * c for w, c in self._terms.items()}, self._degree)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self.tensor(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Concatenation product a⊗b"""
        degree = None
        if self._degree is not None and other._degree is not None:
            degree = self._degree + other._degree
        out: Dict[Word, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out[w1 + w2] += c1 * c2
        return TensorElement(out, degree)

    # ------------------------------------------------------------------
    # Word-level transformations
    # ------------------------------------------------------------------

    def filter(self, keep: Callable[[Word], bool]) -> "TensorElement":
        """The part supported on words satisfying keep(word)"""
        return TensorElement({w: c for w, c in self._terms.items() if keep(w)}, self._degree)

    def linear_part(self) -> "TensorElement":
        """Word-length-one component"""
        return self.filter(lambda word: len(word) == 1)

    def rename(self, mapping: Mapping[str, str]) -> "TensorElement":
        """Relabel letters (mapping must be injective on the letters used)"""
        return TensorElement(
            {tuple(mapping.get(letter, letter) for letter in w): c for w, c in self._terms.items()},
            self._degree,
        )

    # ------------------------------------------------------------------
    # Comparison / display
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coefficient in sorted(self._terms.items()):
            body = ".".join(word)
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            text = body if magnitude == 1 else f"{magnitude}*{body}"
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"TensorElement({self}, degree={self._degree})"


def bracket(a: TensorElement, b: TensorElement) -> TensorElement:
    """Graded commutator [a,b] = a⊗b - (-1)^{|a||b|} b⊗a"""
    if a.degree is None or b.degree is None:
        if a and b:
            raise DegreeError("Bracket of elements without a degree")
        degree = None if a.degree is None or b.degree is None else a.degree + b.degree
        return TensorElement.zero(degree)
    if not a or not b:
        return TensorElement.zero(a.degree + b.degree)
    sign = koszul_sign(a.degree * b.degree)
    return a.tensor(b) - b.tensor(a).scale(sign)
