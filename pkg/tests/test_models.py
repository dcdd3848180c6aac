from dataclasses import replace

import pytest

from src.algebra.expr import expand
from src.algebra.parser import parse
from src.algebra.tensor import Generator, TensorElement, bracket
from src.dgl import DglMorphism, ProductElement, check_chain_map, check_d_squared, check_quasi_iso, compose
from src.errors import BetaInputError, ClosureViolation, InputError
from src.models import (
    CopyPairing,
    MapModel,
    beta,
    binary_product,
    check_product_invariants,
    cofibration_replacement,
    diagonal_model,
    fat_wedge_model,
    parse_power_id,
    power_model,
)
from src.secat.modelfile import write_model


def test_power_of_one_copy_is_the_model(cp2):
    P = power_model(cp2, 1, 6)
    assert P.dgl is cp2
    assert P.n == 1


def test_power_model_rejects_zero_copies(cp2):
    with pytest.raises(InputError):
        power_model(cp2, 0, 6)


def test_cp2_square(cp2):
    P = power_model(cp2, 2, 6)
    assert P.dgl.ids[:4] == ["x@1", "y@1", "x@2", "y@2"]
    assert set(P.dgl.ids[4:]) == {"s{x@1,x@2}", "s{x@1,y@2}", "s{y@1,x@2}"}
    assert [g.id for g in P.omitted] == ["s{y@1,y@2}"]
    assert P.dgl.differential("s{x@1,x@2}") == bracket(P.dgl.element("x@1"), P.dgl.element("x@2"))

    report = check_product_invariants(P)
    assert report.passed, [c.check for c in report.checks if not c.passed]
    assert report.quasi_iso.passed


def test_sphere_cube_invariants(s2):
    P = power_model(s2, 3, 4)
    assert "s{v@1,v@2}" in P.dgl
    assert "s{v@2,v@3}" in P.dgl
    assert [g.id for g in P.omitted] == ["s{v@1,v@2,v@3}"]
    assert check_product_invariants(P).passed


def test_binary_product_of_spheres(s3):
    P = binary_product(s3, s3, 6)
    assert P.dgl.ids == ["v@1", "v@2", "s{v@1,v@2}"]
    assert P.dgl.differential("s{v@1,v@2}") == bracket(P.dgl.element("v@1"), P.dgl.element("v@2"))
    assert check_product_invariants(P).passed


def test_power_ids_parse_back():
    assert parse_power_id("s{x@1,y@2}") == (("x", "y"), (1, 2))
    assert parse_power_id("x@3") == (("x",), (3,))
    assert parse_power_id("x") is None


def test_cp2_diagonal(cp2):
    delta = diagonal_model(cp2, 2, 6)
    P = delta.target
    assert delta.image("x") == P.element("x@1") + P.element("x@2")
    expected = P.element("y@1") + P.element("y@2") + P.element("s{x@1,x@2}").scale(2)
    assert delta.image("y") == expected
    assert check_chain_map(delta, 6).passed


def test_diagonal_of_one_copy_is_identity(cp2):
    delta = diagonal_model(cp2, 1, 6)
    assert delta.image("y") == cp2.element("y")


def test_map_model_domain_must_be_a_sub_dgl(cp2):
    with pytest.raises(InputError):
        MapModel(cp2, frozenset({"y"}))
    M = MapModel(cp2, frozenset({"x"}))
    assert M.domain_ids == ("x",)
    assert M.relative_ids == ("y",)


def test_fat_wedge_of_base_point_inclusion(cp2):
    M = MapModel(cp2)
    fw = fat_wedge_model(M, 1, 6)
    assert set(fw.removed) == {"s{x@1,x@2}", "s{x@1,y@2}", "s{y@1,x@2}"}
    assert fw.kept.ids == ["x@1", "y@1", "x@2", "y@2"]
    assert fw.u_ids == frozenset()

    fw0 = fat_wedge_model(M, 0, 6)
    assert len(fw0.kept) == 0


def test_fat_wedge_keeps_suspensions_touching_the_domain(cp2):
    fw = fat_wedge_model(MapModel(cp2, frozenset({"x"})), 1, 6)
    assert fw.removed == ()
    assert "s{x@1,y@2}" in fw.u_ids
    assert "s{x@1,x@2}" in fw.u_ids

    fw0 = fat_wedge_model(MapModel(cp2, frozenset({"x"})), 0, 6)
    assert fw0.kept.ids == ["x"]


def test_fat_wedge_of_three_copies_keeps_pairs(s2):
    fw = fat_wedge_model(MapModel(s2), 2, 4)
    assert fw.u_ids == frozenset({"s{v@1,v@2}", "s{v@1,v@3}", "s{v@2,v@3}"})
    assert fw.removed == ()


def test_replacement_of_s3_diagonal(s3):
    delta = diagonal_model(s3, 2, 5)
    replacement = cofibration_replacement(delta, 5)
    M = replacement.map_model
    assert replacement.strategy == "change_of_generators"
    assert replacement.minimal
    assert M.domain_ids == ("v",)
    assert {gid: M.dgl.generator(gid).degree for gid in M.relative_ids} == {"u1": 2, "u2": 5}
    assert M.dgl.differential("u2") == expand(parse("[v,u1]", M.dgl.alphabet))
    assert check_chain_map(replacement.rho, 5).passed
    assert check_quasi_iso(replacement.rho, 5).passed


def test_replacement_of_s2_diagonal(s2):
    replacement = cofibration_replacement(diagonal_model(s2, 2, 4), 4)
    L = replacement.map_model.dgl
    assert L.differential("u2") == expand(parse("[v,u1] - [u1,u1]", L.alphabet))
    assert check_quasi_iso(replacement.rho, 4).passed


def test_homology_killing_replacement(s3):
    delta = diagonal_model(s3, 2, 5)
    replacement = cofibration_replacement(delta, 5, strategy="homology_killing")
    assert replacement.strategy == "homology_killing"
    assert replacement.map_model.domain_ids == ("v",)
    assert check_chain_map(replacement.rho, 5).passed
    assert check_quasi_iso(replacement.rho, 5).passed


@pytest.mark.slow
@pytest.mark.parametrize("left,right", [("s2", "s2"), ("s3", "s3"), ("cp2", "s3")])
def test_binary_products_of_small_models(request, left, right):
    P = binary_product(request.getfixturevalue(left), request.getfixturevalue(right), 10)
    assert check_d_squared(P.dgl, 10).passed
    assert check_quasi_iso(P.phi, 7).passed
    report = check_product_invariants(P, include_quasi_iso=False)
    assert report.passed, [c.check for c in report.checks if not c.passed]


def test_cp2_diagonal_projects_to_the_diagonal(cp2):
    power = power_model(cp2, 2, 8)
    delta = diagonal_model(cp2, 2, 8, power=power)
    first, second = power.factors
    for gid in ("x", "y"):
        expected = ProductElement([first.element(f"{gid}@1"), second.element(f"{gid}@2")])
        assert power.phi.apply(delta.image(gid)) == expected
    xi = delta.image("y") - power.dgl.element("y@1") - power.dgl.element("y@2")
    assert all(len(word) == 1 and word[0].startswith("s{") for word in xi.words())
    assert check_chain_map(delta, 8).passed


def test_binary_product_records_generators_above_the_bound(s3):
    P = binary_product(s3, s3, 4)
    assert P.dgl.ids == ["v@1", "v@2"]
    assert [g.id for g in P.omitted] == ["s{v@1,v@2}"]
    assert "omit s{v@1,v@2} 5" in write_model(P.dgl)


def test_beta_of_a_mixed_bracket(s3):
    P = power_model(s3, 2, 8)
    L = P.dgl
    s = L.element("s{v@1,v@2}")
    pairing = CopyPairing(L)

    result, correction = beta(L, pairing, bracket(L.element("v@1"), L.element("v@2")))
    assert result == s
    assert correction.is_zero()

    xi = expand(parse("[[v@1,v@2],v@1]", L.alphabet))
    result, correction = beta(L, pairing, xi)
    assert result == bracket(s, L.element("v@1"))
    assert L.d(result) - xi == correction
    assert correction.is_zero()


def test_beta_correction_stays_in_the_suspension_ideal(cp2):
    P = power_model(cp2, 2, 8)
    L = P.dgl
    xi = bracket(L.element("x@1"), L.element("y@2"))
    result, correction = beta(L, CopyPairing(L), xi)
    assert result == L.element("s{x@1,y@2}")
    assert L.d(result) - xi == correction
    assert all(any(letter.startswith("s{") for letter in word) for word in correction.words())


def test_beta_rejects_words_outside_the_mixed_ideal(cp2):
    P = power_model(cp2, 2, 6)
    L = P.dgl
    pairing = CopyPairing(L)
    with pytest.raises(BetaInputError):
        beta(L, pairing, bracket(L.element("x@1"), L.element("x@1")))
    with pytest.raises(BetaInputError):
        beta(L, pairing, bracket(L.element("x@1"), L.element("s{x@1,x@2}")))
    with pytest.raises(BetaInputError):
        beta(L, pairing, L.element("x@1").tensor(L.element("x@2")))
    zero, plus = beta(L, pairing, TensorElement.zero(2))
    assert zero.is_zero() and zero.degree == 3
    assert plus.is_zero()


def test_projection_of_diagonal_composes_to_the_diagonal(cp2):
    power = power_model(cp2, 2, 8)
    delta = diagonal_model(cp2, 2, 8, power=power)
    composite = compose(power.phi, delta)
    first, second = power.factors
    linear_phi = DglMorphism(power.dgl, power.phi.target, power.phi.linear_part())
    for gid in ("x", "y"):
        assert composite.image(gid) == ProductElement([first.element(f"{gid}@1"), second.element(f"{gid}@2")])
        assert composite.linear_part()[gid] == linear_phi.apply(delta.linear_part()[gid])

    lifted = delta.linear_part()["y"]
    assert lifted.coefficient(("s{x@1,x@2}",)) == 2
    assert lifted.coefficient(("y@1",)) == lifted.coefficient(("y@2",)) == 1


def test_fat_wedge_refuses_a_power_that_is_not_closed(s3):
    P = power_model(s3, 2, 8)
    t = Generator("t", 6)
    crafted = replace(P, dgl=P.dgl.extend([t], {"t": P.dgl.element("s{v@1,v@2}")}))
    with pytest.raises(ClosureViolation) as excinfo:
        fat_wedge_model(MapModel(s3), 1, 8, power=crafted)
    assert excinfo.value.generator_id == "t"
