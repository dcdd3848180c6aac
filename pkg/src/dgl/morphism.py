"""
Dgl Morphisms and Direct Products

A morphism is determined by the image of each source generator and extended
multiplicatively on tensor words. Targets are either a Dgl or a DirectProduct
of Dgls (the target of the projection from a product model).
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..algebra.tensor import TensorElement
from ..errors import DegreeError, MixedDegreeError, UnknownGeneratorError
from .dgl import Dgl


class ProductElement:
    """Element of a direct product of Lie algebras: one component per factor"""

    __slots__ = ("components", "degree")

    def __init__(self, components: Sequence[TensorElement], degree: Optional[int] = None):
        self.components = tuple(components)
        if degree is None:
            degree = next((c.degree for c in self.components if c), None)
        self.degree = degree

    @classmethod
    def combine(cls, pairs: Iterable[Tuple[Fraction, "ProductElement"]], degree: Optional[int] = None,
                width: int = 0) -> "ProductElement":
        pairs = list(pairs)
        if pairs:
            width = len(pairs[0][1].components)
        components = [
            TensorElement.combine(((c, e.components[i]) for c, e in pairs), degree)
            for i in range(width)
        ]
        return cls(components, degree)

    def items(self) -> Iterator[Tuple[Tuple[int, tuple], Fraction]]:
        for i, component in enumerate(self.components):
            for word, coefficient in component.items():
                yield (i, word), coefficient

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _check(self, other: "ProductElement"):
        if len(self.components) != len(other.components):
            raise ValueError("Elements of different products")
        if self and other and self.degree != other.degree:
            raise MixedDegreeError(f"Cannot add degrees {self.degree} and {other.degree}")

    def __add__(self, other: "ProductElement") -> "ProductElement":
        self._check(other)
        return ProductElement([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "ProductElement") -> "ProductElement":
        self._check(other)
        return ProductElement([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "ProductElement":
        return ProductElement([-a for a in self.components], self.degree)

    def scale(self, coefficient) -> "ProductElement":
        return ProductElement([a.scale(coefficient) for a in self.components], self.degree)

    def tensor(self, other: "ProductElement") -> "ProductElement":
        return ProductElement([a.tensor(b) for a, b in zip(self.components, other.components)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductElement):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"ProductElement{self}"


class DirectProduct:
    """Direct product of Dgls with componentwise bracket and differential"""

    def __init__(self, factors: Sequence[Dgl], name: Optional[str] = None):
        self.factors = tuple(factors)
        self.name = name or " x ".join(f.name for f in self.factors)

    def zero(self, degree: Optional[int] = None) -> ProductElement:
        return ProductElement([TensorElement.zero(degree) for _ in self.factors], degree)

    def embed(self, i: int, element: TensorElement) -> ProductElement:
        components = [TensorElement.zero(element.degree) for _ in self.factors]
        components[i] = element
        return ProductElement(components, element.degree)

    def d(self, e: ProductElement) -> ProductElement:
        degree = e.degree - 1 if e.degree is not None else None
        return ProductElement([f.d(c) for f, c in zip(self.factors, e.components)], degree)

    def basis(self, degree: int) -> List[ProductElement]:
        return [self.embed(i, b) for i, f in enumerate(self.factors) for b in f.basis(degree)]

    def __repr__(self) -> str:
        return f"DirectProduct({self.name})"


Target = Union[Dgl, DirectProduct]
Element = Union[TensorElement, ProductElement]


def combine(target: Target, pairs: Iterable[Tuple[Fraction, Element]], degree: Optional[int] = None) -> Element:
    """Linear combination in the target's element type"""
    if isinstance(target, DirectProduct):
        return ProductElement.combine(pairs, degree, width=len(target.factors))
    return TensorElement.combine(pairs, degree)


def evaluate(
    element: TensorElement,
    images: Mapping[str, Element],
    target: Target,
    cache: Optional[Dict[tuple, Element]] = None,
) -> Element:
    """
    Image of a tensor element under the algebra map letter -> images[letter]

    Raises:
        UnknownGeneratorError: a letter without an image
    """
    if cache is None:
        cache = {}

    def word_image(word: tuple) -> Element:
        if word in cache:
            return cache[word]
        if len(word) == 1:
            try:
                result = images[word[0]]
            except KeyError:
                raise UnknownGeneratorError(word[0]) from None
        else:
            result = word_image(word[:-1]).tensor(word_image(word[-1:]))
        cache[word] = result
        return result

    return combine(target, ((c, word_image(w)) for w, c in element.items()), element.degree)


class DglMorphism:
    """
    Algebra map L(source gens) -> target given on generators

    Args:
        source: source Dgl
        target: target Dgl or DirectProduct
        assignment: generator id -> image (missing ids map to zero)
    """

    def __init__(self, source: Dgl, target: Target, assignment: Mapping[str, Element], name: str = "phi"):
        self.source = source
        self.target = target
        self.name = name
        self._images: Dict[str, Element] = {}
        for gid in assignment:
            source.generator(gid)
        for g in source.generators:
            image = assignment.get(g.id)
            if image is None or not image:
                image = target.zero(g.degree)
            elif image.degree != g.degree:
                raise DegreeError(
                    f"{name}({g.id}) has degree {image.degree}, expected {g.degree}"
                )
            self._images[g.id] = image
        self._cache: Dict[tuple, Element] = {}

    @property
    def assignment(self) -> Dict[str, Element]:
        return dict(self._images)

    def image(self, gid: str) -> Element:
        self.source.generator(gid)
        return self._images[gid]

    def apply(self, element: TensorElement) -> Element:
        return evaluate(element, self._images, self.target, self._cache)

    def linear_part(self) -> Dict[str, Element]:
        """Word-length-one component of each image"""
        out = {}
        for gid, image in self._images.items():
            if isinstance(image, ProductElement):
                out[gid] = ProductElement([c.linear_part() for c in image.components], image.degree)
            else:
                out[gid] = image.linear_part()
        return out

    def with_image(self, gid: str, image: Element) -> "DglMorphism":
        """Copy with one generator image replaced"""
        assignment = dict(self._images)
        assignment[gid] = image
        return DglMorphism(self.source, self.target, assignment, self.name)

    def __repr__(self) -> str:
        return f"DglMorphism({self.name}: {self.source.name} -> {self.target.name})"


def compose(psi: DglMorphism, phi: DglMorphism) -> DglMorphism:
    """psi ∘ phi"""
    if not isinstance(phi.target, Dgl):
        raise TypeError("Only morphisms into a Dgl can be composed further")
    return DglMorphism(
        phi.source,
        psi.target,
        {gid: psi.apply(image) for gid, image in phi.assignment.items()},
        name=f"{psi.name}∘{phi.name}",
    )


def identity(L: Dgl) -> DglMorphism:
    return DglMorphism(L, L, {g.id: g.element() for g in L.generators}, name="id")


def inclusion(sub: Dgl, ambient: Dgl) -> DglMorphism:
    """Generator-wise inclusion of a sub-dgl"""
    for g in sub.generators:
        if ambient.generator(g.id) != g:
            raise UnknownGeneratorError(g.id)
    return DglMorphism(sub, ambient, {g.id: g.element() for g in sub.generators}, name="iota")
