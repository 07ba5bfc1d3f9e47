import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import field
from linset.classifier import (
    CaseLabel,
    census,
    classify_case,
    lambda_from_witness,
    norm_invariant,
    pgammal_equivalent,
    pgl_equivalent,
    predicted_spectrum,
    quadric_hyperplane_witness,
    quadric_points,
    scattered_elements,
    weight_two_points,
)
from linset.errors import NormNotOne
from linset.linear_sets import build_U, eval_qpoly, linear_set_of_b, weight_spectrum

C1, C2, C3 = CaseLabel


def test_gf16_cases(F16):
    g = F16.exp
    assert classify_case(F16, 0) == C1
    assert classify_case(F16, 1) == C2
    assert classify_case(F16, g(1)) == C3


def test_q2_predicted_spectra(F16):
    assert predicted_spectrum(F16, C1) == {1: 15}
    assert predicted_spectrum(F16, C2) == {1: 12, 2: 1}
    assert predicted_spectrum(F16, C3) == {1: 6, 2: 3}


def test_gf16_equivalences(F16):
    g = F16.exp
    assert pgl_equivalent(F16, g(3), g(6))
    assert not pgl_equivalent(F16, g(1), g(2))
    assert pgammal_equivalent(F16, g(1), g(2))
    assert not pgammal_equivalent(F16, 0, g(1))
    assert all(pgl_equivalent(F16, b, b) and pgammal_equivalent(F16, b, b) for b in F16.elements())


def test_gf16_weight_two_points(F16):
    assert weight_two_points(F16, 0) == set()
    assert weight_two_points(F16, 1) == {0}
    assert weight_two_points(F16, 2) == {4, 11, 15}


def test_quadric_witness(F16):
    mu, z = quadric_hyperplane_witness(F16, 1)
    assert (mu, z) == (1, 1)
    for b in (F16.exp(3), F16.exp(1)):
        mu, z = quadric_hyperplane_witness(F16, b)
        assert F16.pow(mu, F16.q - 1) == b
        assert F16.pow(z, 5) == 1 and F16.trace(F16.mul(mu, z)) == 0
        lam = lambda_from_witness(F16, mu, z)
        assert F16.sub(lam, F16.frobenius(lam, 1)) == F16.mul(mu, z)
    with pytest.raises(NormNotOne):
        quadric_hyperplane_witness(F16, 0)


def test_quadric_has_q2_plus_one_points(small_field):
    F = small_field
    assert len(quadric_points(F)) == F.q2 + 1


# -- exhaustive invariants ------------------------------------------------------


def test_cases_partition(small_field):
    F = small_field
    counts = {label: 0 for label in CaseLabel}
    for b in F.elements():
        counts[classify_case(F, b)] += 1
    q = F.q
    # N_{q^4/q^2} = 1 on q^2 + 1 elements, N_{q^4/q} = 1 on (q^4-1)/(q-1)
    assert counts[C2] == q**2 + 1
    assert counts[C3] == (F.order - 1) // (q - 1) - (q**2 + 1)
    assert sum(counts.values()) == F.order


def test_weight_two_points_match_brute_force(small_field):
    F = small_field
    for b in F.elements():
        assert weight_two_points(F, b) == set(linear_set_of_b(F, b).points_of_weight(2))


def test_spectrum_theorem(small_field):
    F = small_field
    for b in F.elements():
        assert weight_spectrum(F, build_U(F, b)) == predicted_spectrum(F, classify_case(F, b))


@pytest.mark.parametrize("pe", [(2, 1), (3, 1)])
@pytest.mark.parametrize("relation", [pgl_equivalent, pgammal_equivalent])
def test_equivalence_relation(pe, relation):
    F = field(*pe)
    els = list(F.elements())
    R = {(b, c) for b in els for c in els if relation(F, b, c)}
    assert all((b, b) in R for b in els)
    assert all((c, b) in R for b, c in R)
    # transitivity: the classes of each element are nested consistently
    cls = {b: frozenset(c for c in els if (b, c) in R) for b in els}
    assert all(cls[b] == cls[c] for b, c in R)


@pytest.mark.parametrize("pe", [(2, 1), (3, 1), (2, 2)])
def test_pgl_implies_pgammal_and_case_constant(pe):
    F = field(*pe)
    for b in F.elements():
        for c in F.elements():
            if pgl_equivalent(F, b, c):
                assert pgammal_equivalent(F, b, c)
            if pgammal_equivalent(F, b, c):
                assert classify_case(F, b) == classify_case(F, c)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]), st.data())
def test_norm_invariant_in_gf_q2(pe, data):
    F = field(*pe)
    b = data.draw(st.integers(0, F.order - 1))
    assert F.in_subfield(norm_invariant(F, b), 2)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
def test_weight_two_lambda_equation(pe, data):
    F = field(*pe)
    b = data.draw(st.integers(1, F.order - 1))
    f = build_U(F, b)
    for P in weight_two_points(F, b):
        assert P != F.order  # <(0,1)> never lies on L_U(b)
        # an x with f(x)/x = P has a stabilizer lambda outside GF(q)
        xs = [x for x in range(1, F.order) if F.div(eval_qpoly(F, f, x), x) == P]
        lam_ok = any(
            eval_qpoly(F, f, F.mul(lam, xs[0])) == F.mul(lam, eval_qpoly(F, f, xs[0]))
            for lam in F.elements()
            if not F.in_subfield(lam, 1)
        )
        assert lam_ok


# -- census -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "pe, counts",
    [((2, 1), (1, 1, 2)), ((3, 1), (3, 1, 3)), ((2, 2), (6, 1, 4)), ((5, 1), (10, 1, 5))],
)
def test_pgl_census_counts(pe, counts):
    assert tuple(census(field(*pe), "PGL").counts().values()) == counts


def test_pgammal_census_q3(F81):
    assert census(F81, "PGammaL").counts()[C1] == 2
    assert census(F81, "PGammaL", scattered_elements(F81)).counts()[C1] == 2


def test_census_reps_are_minimal_and_cover(F81):
    cen = census(F81, "PGL")
    members = sorted(b for cl in cen.classes for b in cl.members)
    assert members == list(F81.elements())
    for cl in cen.classes:
        assert cl.rep == min(cl.members)
        assert all(pgl_equivalent(F81, cl.rep, b) for b in cl.members)


def test_census_json(F16):
    d = json.loads(census(F16, "PGammaL").to_json())
    assert d["q"] == 2 and d["group"] == "PGammaL"
    assert all(set(c) == {"case", "norm_invariant", "rep", "size"} for c in d["classes"])
    assert sum(c["size"] for c in d["classes"]) == 16
