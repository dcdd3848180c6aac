import dataclasses
from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.algebra.tensor import TensorElement
from src.dgl import DglMorphism
from src.errors import InputError, InvariantViolation
from src.models import MapModel
from src.secat import (
    Certificate,
    NoCertificate,
    SearchOptions,
    SecatProblem,
    cat,
    find_alpha,
    parse_model,
    secat_upper_bound,
    tc,
    verify_certificate,
)
from src.secat.reports import secat_report

from .conftest import NOT_MINIMAL_TEXT


def certificate_for(L, n, N):
    outcome = find_alpha(SecatProblem(MapModel(L), n, N))
    assert isinstance(outcome, Certificate), getattr(outcome, "reason", None)
    return outcome


def with_images(c: Certificate, images) -> Certificate:
    alpha = DglMorphism(c.alpha.source, c.fat_wedge.kept, images, name="alpha")
    return dataclasses.replace(c, alpha=alpha)


def failed_checks(report):
    return {check.check for check in report.checks if not check.passed}


# ============================================================================
# Search options
# ============================================================================

def test_search_options_sort_coefficients():
    assert SearchOptions(coefficients=[2, -1, 1, 0]).coefficients == [0, -1, 1, 2]


def test_search_options_need_a_nonzero_coefficient():
    with pytest.raises(ValidationError):
        SearchOptions(coefficients=[0])
    with pytest.raises(ValidationError):
        SearchOptions(budget=0)


def test_problem_validates_degree_bound(cp2):
    with pytest.raises(InputError):
        SecatProblem(MapModel(cp2), 1, 2)
    with pytest.raises(InputError):
        SecatProblem(MapModel(cp2), -1, 4)


# ============================================================================
# LS category
# ============================================================================

@pytest.mark.parametrize("fixture_name,N", [("s2", 4), ("s3", 4)])
def test_cat_of_spheres_is_one(request, fixture_name, N):
    L = request.getfixturevalue(fixture_name)
    result = cat(L, 3, N)
    assert result.bound == 1
    first = result.outcomes[0]
    assert isinstance(first, NoCertificate)
    assert first.exhaustive
    assert first.reason == "the copies of v are not in the fat wedge"
    assert result.verification.passed


def test_cat_certificate_images(s3):
    result = cat(s3, 3, 4)
    report = secat_report(result, "S3", "cat")
    assert report.certificate.images == {"v": "v@1 + v@2"}
    assert report.statement == "cat <= 1 (certificate verified up to degree 4)"


def test_cp2_has_no_strict_map_for_one(cp2):
    outcome = find_alpha(SecatProblem(MapModel(cp2), 1, 4))
    assert isinstance(outcome, NoCertificate)
    assert outcome.exhaustive
    assert outcome.generator == "y"
    assert outcome.residual == "2*[x@1,x@2]"
    assert outcome.reason == "no solution for xi_y"
    assert [record.generator for record in outcome.transcript] == ["x", "y"]
    assert not outcome.transcript[-1].consistent


def test_cat_of_cp2_is_two(cp2):
    result = cat(cp2, 3, 4)
    assert result.bound == 2
    assert [type(o).__name__ for o in result.outcomes] == ["NoCertificate", "NoCertificate", "Certificate"]
    assert all(o.exhaustive for o in result.outcomes[:2])
    alpha = result.certificate.alpha
    kept = result.certificate.fat_wedge.kept
    expected = (kept.element("y@1") + kept.element("y@2") + kept.element("y@3")
                + kept.element("s{x@1,x@2}").scale(2)
                + kept.element("s{x@1,x@3}").scale(2)
                + kept.element("s{x@2,x@3}").scale(2))
    assert alpha.image("y") == expected


@pytest.mark.slow
def test_cat_of_product_of_three_spheres_is_two(s3xs3):
    result = cat(s3xs3, 2, 8)
    assert result.bound == 2
    assert result.outcomes[1].exhaustive
    assert result.verification.passed
    assert result.verification.degree_bound == 8


def test_cat_requires_minimal_model():
    with pytest.raises(InputError):
        cat(parse_model(NOT_MINIMAL_TEXT).dgl, 2, 4)


def test_exhaustive_failures_are_stated(cp2):
    result = cat(cp2, 1, 4)
    assert result.bound is None
    report = secat_report(result, "CP2", "cat")
    assert report.statement.startswith("no map of the required shape for 0 <= n <= 1")


# ============================================================================
# Topological complexity
# ============================================================================

def test_tc_of_odd_sphere_is_one(s3):
    result = tc(s3, 2, 5)
    assert result.bound == 1
    assert result.replacement.map_model.relative_ids == ("u1", "u2")
    assert result.outcomes[0].exhaustive


@pytest.mark.slow
def test_tc_of_even_sphere_is_two(s2):
    result = tc(s2, 2, 8)
    assert result.bound == 2
    assert result.outcomes[1].exhaustive
    assert result.verification.passed


def test_tc_of_point_is_zero(point):
    result = tc(point, 2, 4)
    assert result.bound == 0


# ============================================================================
# Budget and restarts
# ============================================================================

def test_budget_exhaustion_is_inconclusive(cp2):
    options = SearchOptions(budget=1, restarts=0)
    result = secat_upper_bound(MapModel(cp2), 2, 4, options, min_n=2)
    outcome = result.outcomes[0]
    assert result.bound is None
    assert not outcome.exhaustive
    assert outcome.reason == "branch budget of 1 exhausted"
    assert secat_report(result, "CP2").statement.startswith("inconclusive")


def test_restart_recovers_after_budget(cp2):
    options = SearchOptions(budget=1, restarts=1, seed=7)
    result = secat_upper_bound(MapModel(cp2), 2, 4, options, min_n=2)
    assert result.bound == 2


def test_search_is_deterministic(cp2):
    first = secat_report(cat(cp2, 2, 4), "CP2", "cat")
    second = secat_report(cat(cp2, 2, 4), "CP2", "cat")
    assert first.model_dump_json() == second.model_dump_json()


# ============================================================================
# Verification
# ============================================================================

def test_verification_accepts_found_certificates(cp2, s2):
    assert verify_certificate(certificate_for(cp2, 2, 4)).passed
    assert verify_certificate(certificate_for(s2, 1, 4)).passed


def test_verification_rejects_wrong_linear_part(s2):
    c = certificate_for(s2, 1, 4)
    tampered = with_images(c, {"v": c.fat_wedge.kept.element("v@1")})
    report = verify_certificate(tampered)
    assert not report.passed
    assert failed_checks(report) == {"linear_part"}


def test_verification_rejects_dropped_correction(cp2):
    c = certificate_for(cp2, 2, 4)
    kept = c.fat_wedge.kept
    images = c.alpha.assignment
    images["y"] = kept.element("y@1") + kept.element("y@2") + kept.element("y@3")
    report = verify_certificate(with_images(c, images))
    assert not report.passed
    assert failed_checks(report) == {"chain_map"}


def test_verification_rejects_mutated_coordinate(cp2):
    c = certificate_for(cp2, 2, 4)
    images = c.alpha.assignment
    images["y"] = images["y"] + c.fat_wedge.kept.element("s{x@1,x@3}")
    report = verify_certificate(with_images(c, images))
    assert failed_checks(report) == {"chain_map"}
    violation = next(ch for ch in report.checks if ch.check == "chain_map").violations[0]
    assert violation.generator == "y"


def test_secat_upper_bound_refuses_unverifiable_certificates(monkeypatch, cp2):
    import src.secat.certify as certify_module

    def broken(c, N=None):
        report = verify_certificate(c, N)
        report.passed = False
        return report

    monkeypatch.setattr(certify_module, "verify_certificate", broken)
    with pytest.raises(InvariantViolation):
        secat_upper_bound(MapModel(cp2), 2, 4, min_n=2)


def test_zero_copies_with_empty_relative_part_is_a_retraction(cp2):
    M = MapModel(cp2, frozenset({"x", "y"}))
    outcome = find_alpha(SecatProblem(M, 0, 4))
    assert isinstance(outcome, Certificate)
    report = verify_certificate(outcome)
    assert report.passed
    assert "retraction" in {check.check for check in report.checks}


def test_verification_counts_single_suspension_letters_as_xi(cp2):
    c = certificate_for(cp2, 2, 4)
    report = verify_certificate(c)
    assert report.passed
    assert "linear_part" not in failed_checks(report)
    linear = c.alpha.linear_part()["y"]
    assert linear.coefficient(("s{x@1,x@2}",)) == 2
    assert linear.coefficient(("y@1",)) == 1


def mutants(c: Certificate):
    """Every certificate with one coefficient of one image raised by one"""
    for g in c.alpha.source.generators:
        image = c.alpha.image(g.id)
        for word in image.words():
            images = c.alpha.assignment
            images[g.id] = image + TensorElement({word: Fraction(1)}, g.degree)
            yield g.id, word, with_images(c, images)


def assert_every_mutation_fails(c: Certificate):
    assert verify_certificate(c).passed
    count = 0
    for gid, word, mutant in mutants(c):
        assert not verify_certificate(mutant).passed, (gid, word)
        count += 1
    assert count > 0


@pytest.mark.parametrize("fixture_name,command,max_n,N", [
    ("s2", "cat", 2, 4),
    ("s3", "cat", 2, 4),
    ("cp2", "cat", 3, 4),
    ("s3", "tc", 2, 5),
])
def test_mutated_certificates_fail_verification(request, fixture_name, command, max_n, N):
    run = {"cat": cat, "tc": tc}[command]
    result = run(request.getfixturevalue(fixture_name), max_n, N)
    assert_every_mutation_fails(result.certificate)


@pytest.mark.slow
@pytest.mark.parametrize("fixture_name,command", [("s3xs3", "cat"), ("s2", "tc")])
def test_mutated_slow_certificates_fail_verification(request, fixture_name, command):
    run = {"cat": cat, "tc": tc}[command]
    result = run(request.getfixturevalue(fixture_name), 2, 8)
    assert_every_mutation_fails(result.certificate)


# ============================================================================
# Monotonicity
# ============================================================================

@pytest.mark.parametrize("fixture_name,n", [("s2", 1), ("s3", 1), ("cp2", 2)])
def test_certificates_persist_for_more_copies(request, fixture_name, n):
    L = request.getfixturevalue(fixture_name)
    for extra in (n, n + 1):
        assert verify_certificate(certificate_for(L, extra, 4)).passed


def test_bound_does_not_grow_with_the_degree_bound(cp2, s3):
    assert [cat(cp2, 3, N).bound for N in (3, 4, 6)] == [2, 2, 2]
    assert [tc(s3, 2, N).bound for N in (5, 7)] == [1, 1]
