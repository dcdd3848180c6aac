import random
from fractions import Fraction

import pytest

from src.algebra.basis import is_lie, lie_basis, render_element, to_lie_expr
from src.algebra.expr import expand, is_zero, render
from src.algebra.linear import independent_columns
from src.algebra.parser import parse
from src.algebra.tensor import Generator, TensorElement, bracket, koszul_sign
from src.dgl.dgl import Dgl
from src.errors import LieSyntaxError, MixedDegreeError, UnknownGeneratorError

X = Generator("x", 1)
Y = Generator("y", 3)
Z = Generator("z", 5)
ALPHABET = {g.id: g for g in (X, Y, Z)}


def random_bracket(rng: random.Random, leaves: int) -> TensorElement:
    if leaves == 1:
        return rng.choice((X, Y, Z)).element()
    split = rng.randint(1, leaves - 1)
    return bracket(random_bracket(rng, split), random_bracket(rng, leaves - split))


def random_element(rng: random.Random) -> TensorElement:
    element = random_bracket(rng, rng.randint(1, 3))
    return element.scale(Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def test_graded_antisymmetry(rng):
    for _ in range(500):
        a, b = random_element(rng), random_element(rng)
        sign = koszul_sign(a.degree * b.degree)
        assert bracket(a, b) == -bracket(b, a).scale(sign)


def test_graded_jacobi(rng):
    for _ in range(500):
        a, b, c = (random_element(rng) for _ in range(3))
        lhs = bracket(a, bracket(b, c))
        rhs = bracket(bracket(a, b), c) + bracket(b, bracket(a, c)).scale(koszul_sign(a.degree * b.degree))
        assert lhs == rhs


def test_differential_is_a_derivation(rng):
    L = Dgl(
        [X, Y, Z],
        {"y": bracket(X.element(), X.element()), "z": bracket(X.element(), Y.element())},
    )
    for _ in range(500):
        a, b = random_element(rng), random_element(rng)
        lhs = L.d(bracket(a, b))
        rhs = bracket(L.d(a), b) + bracket(a, L.d(b)).scale(koszul_sign(a.degree))
        assert lhs == rhs
        assert L.d(L.d(a)).is_zero()


def test_single_odd_generator_has_square_only():
    dims = [len(lie_basis([X], d).words) for d in range(1, 6)]
    assert dims == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("degree,dimension", [
    (2, 2), (4, 1), (6, 2), (8, 3), (10, 6), (12, 9), (14, 18), (16, 30),
])
def test_even_generators_follow_witt_dimensions(degree, dimension):
    gens = [Generator("a", 2), Generator("b", 2)]
    assert len(lie_basis(gens, degree).words) == dimension
    assert lie_basis(gens, degree - 1).words == ()


def bracket_closure_dims(gens, top):
    """Dimensions of the span of all brackets of lower-degree basis elements"""
    spans = {}
    dims = []
    for degree in range(1, top + 1):
        candidates = [g.element() for g in gens if g.degree == degree]
        for low in range(1, degree):
            for p in spans.get(low, []):
                for q in spans.get(degree - low, []):
                    candidates.append(bracket(p, q))
        chosen = independent_columns([dict(c.terms) for c in candidates]) if candidates else []
        spans[degree] = [candidates[k] for k in chosen]
        dims.append(len(chosen))
    return dims


@pytest.mark.parametrize("degrees,top", [((1, 2), 8), ((1, 1), 6), ((1, 3), 8), ((2, 3), 9), ((2, 2), 12)])
def test_basis_dimensions_match_bracket_closure(degrees, top):
    gens = [Generator(f"g{k}", d) for k, d in enumerate(degrees)]
    expected = bracket_closure_dims(gens, top)
    assert [len(lie_basis(gens, d).words) for d in range(1, top + 1)] == expected


def test_containing_restricts_to_the_ideal():
    full = lie_basis([X, Y], 4)
    ideal = lie_basis([X, Y], 4, containing=frozenset({"y"}))
    assert all(any(g.id == "y" for g in word) for word in ideal.words)
    assert len(ideal.words) == len(full.words) - len(lie_basis([X], 4).words)


def test_even_square_is_not_lie():
    a = Generator("a", 2)
    square = TensorElement({("a", "a"): Fraction(1)}, 4)
    assert not is_lie(square, {"a": a})
    with pytest.raises(ValueError):
        to_lie_expr(square, {"a": a})


def test_render_parse_expand_round_trip():
    text = "2*[x,[x,y]] - 1/2*[y,[x,x]] + [[x,y],x]"
    element = expand(parse(text, ALPHABET))
    assert expand(parse(render(parse(text, ALPHABET)), ALPHABET)) == element
    assert expand(parse(render_element(element, ALPHABET), ALPHABET)) == element
    assert to_lie_expr(TensorElement.zero(3), ALPHABET) is None


def test_parser_errors():
    with pytest.raises(LieSyntaxError) as excinfo:
        parse("[x,y", ALPHABET)
    assert excinfo.value.position == 4
    with pytest.raises(UnknownGeneratorError):
        parse("[x,q]", ALPHABET)
    with pytest.raises(MixedDegreeError):
        parse("y + z", ALPHABET)


def test_odd_bracket_is_symmetric():
    xx = expand(parse("[x,x]", ALPHABET))
    assert xx == TensorElement({("x", "x"): Fraction(2)}, 2)
    assert str(xx) == "2*x.x"


def test_basis_orders_by_length_then_generator_position():
    a, b = Generator("a", 1), Generator("b", 2)
    assert lie_basis([a, b], 2).words == ((b,), (a, a))
    index = {g.id: k for k, g in enumerate((X, Y, Z))}
    words = lie_basis([X, Y, Z], 7).words
    keys = [(len(word), tuple(index[g.id] for g in word)) for word in words]
    assert keys == sorted(keys)


def test_is_zero_on_expressions():
    v = Generator("v", 1)
    assert is_zero(parse("[v,[v,v]]", {"v": v}))
    assert not is_zero(parse("[v,v]", {"v": v}))
    assert not is_zero(parse("[x,y]", ALPHABET))
    # |x||y| is odd, so [x,y] = [y,x]
    assert is_zero(parse("[x,y] - [y,x]", ALPHABET))
    assert is_zero(parse("[y,[y,y]]", ALPHABET))
