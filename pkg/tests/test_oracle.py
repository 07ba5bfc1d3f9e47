import pytest

from conftest import SMALL, field
from linset.classifier import census, pgammal_equivalent, pgl_equivalent
from linset.errors import FieldTooLarge
from linset.linear_sets import QPoly, build_U, compose_scalar, graph, point_set
from linset.oracle import (
    Mat2,
    bf_gl_equivalent_subspace,
    bf_pgammal_equivalent,
    bf_pgl_equivalent,
    gammal_class_census,
    maps_subspace,
    orbit_agreement,
    orbit_test_pairs,
    pgl_witnesses,
    sistema_diagonal_witness,
    sistema_residuals,
    sistema_swap_witness,
    solve_sistema,
    verify_glone_matrix,
)


def test_pgl_group_order_q2(F16):
    # every element of PGL(2,16) maps PG(1,16) onto itself
    everything = list(range(F16.order + 1))
    assert sum(1 for _ in pgl_witnesses(F16, everything, everything)) == 16 * (16**2 - 1)


def test_bf_pgl_examples(F16):
    g = F16.exp
    assert bf_pgl_equivalent(F16, 2, 2) == Mat2(1, 0, 0, 1)
    W = bf_pgl_equivalent(F16, g(3), g(6))
    assert W is not None
    assert {W.apply_point(F16, P) for P in point_set(F16, build_U(F16, g(3)))} == point_set(
        F16, build_U(F16, g(6))
    )
    assert bf_pgl_equivalent(F16, g(1), g(2)) is None


def test_bf_pgammal_examples(F16):
    g = F16.exp
    assert bf_pgammal_equivalent(F16, 5, 5) == Mat2(1, 0, 0, 1, 0)
    W = bf_pgammal_equivalent(F16, g(1), g(2))
    assert W is not None and W.k >= 1
    assert bf_pgammal_equivalent(F16, 0, g(1)) is None


def test_guards():
    F = field(5)
    with pytest.raises(FieldTooLarge):
        bf_pgl_equivalent(F, 1, 2)
    with pytest.raises(FieldTooLarge):
        bf_gl_equivalent_subspace(field(2, 2), build_U(field(2, 2), 1), build_U(field(2, 2), 1))
    with pytest.raises(FieldTooLarge):
        gammal_class_census(field(3), 1)


def test_subspace_oracle_examples(F16):
    f = build_U(F16, 2)
    assert bf_gl_equivalent_subspace(F16, f, f) == Mat2(1, 0, 0, 1)
    lam = 7
    # lam U_f is the graph of x -> f(x / lam) lam
    h = compose_scalar(F16, f, F16.inv(lam))
    W = bf_gl_equivalent_subspace(F16, f, h)
    assert W is not None
    assert {(F16.mul(lam, x), F16.mul(lam, y)) for x, y in graph(F16, f)} == graph(F16, h)
    # U(g)^(q^2) is the graph of the conjugated polynomial
    twisted = QPoly(tuple(F16.frobenius(c, 2) for c in f.coeffs))
    assert bf_gl_equivalent_subspace(F16, f, twisted) is not None
    M = Mat2(F16.frobenius(2, 3), 0, 0, F16.frobenius(2, 2))
    assert {M.apply(F16, x, y) for x, y in graph(F16, f)} == graph(F16, twisted)


def test_pointset_vs_subspace_equivalence_q2(F16):
    reps = census(F16, "PGL").reps()
    for b in F16.elements():
        for c in reps:
            by_points = bf_pgl_equivalent(F16, b, c) is not None
            by_subspace = bf_gl_equivalent_subspace(F16, build_U(F16, b), build_U(F16, c)) is not None
            assert by_points == by_subspace == pgl_equivalent(F16, b, c)


def test_orbit_agreement_exhaustive_q2(F16):
    pairs = [(b, c) for b in F16.elements() for c in F16.elements()]
    rep = orbit_agreement(F16, pairs)
    assert rep.passed and rep.pairs_tested == 2 * 256


def test_orbit_test_pairs_deterministic(F81):
    a = orbit_test_pairs(F81, 200, seed=0)
    assert a == orbit_test_pairs(F81, 200, seed=0)
    reps = set(census(F81, "PGL").reps()) | set(census(F81, "PGammaL").reps())
    assert len(a) == len(reps) ** 2 + 200


@pytest.mark.parametrize("pe", SMALL)
def test_glone_matrix(pe):
    F = field(*pe)
    assert all(verify_glone_matrix(F, b) for b in F.elements())


def test_gammal_census_q2(F16):
    for b in F16.elements():
        rec = gammal_class_census(F16, b)
        assert rec["single_gl_orbit"] and not rec["failures"]
        # frozen from the exhaustive 65536-polynomial scan
        assert rec["matching_polys"] == (30 if b == 0 else 15)
        assert rec["either_route"] == rec["matching_polys"]


# -- coefficient system --------------------------------------------------------


def test_sistema_examples(F16):
    assert solve_sistema(F16, 2, 2, 0) == Mat2(1, 0, 0, 1, 0)
    assert solve_sistema(F16, 2, 4, 0) is None


@pytest.mark.parametrize("pe", [(2, 1), (3, 1)])
def test_sistema_matches_closed_forms(pe):
    F = field(*pe)
    bs = list(F.elements()) if F.q == 2 else census(F, "PGL").reps()
    for b in bs:
        for c in F.elements():
            s0 = solve_sistema(F, b, c, 0)
            assert (s0 is not None) == pgl_equivalent(F, b, c)
            some = any(solve_sistema(F, b, c, k) is not None for k in range(F.n))
            assert some == pgammal_equivalent(F, b, c)


@pytest.mark.parametrize("pe", [(2, 1), (3, 1), (2, 2)])
def test_constructive_branches(pe):
    F = field(*pe)
    for b in range(1, F.order, 3):
        for c in range(1, F.order, 5):
            for k in range(F.n):
                for build in (sistema_diagonal_witness, sistema_swap_witness):
                    M = build(F, b, c, k)
                    if M is None:
                        continue
                    if build is sistema_swap_witness and F.pow(b, F.q2 + 1) == 1:
                        continue  # C vanishes, the matrix is singular
                    assert not any(sistema_residuals(F, b, c, k, M))
                    assert M.det(F) != 0
                    assert maps_subspace(F, M, b, c)
