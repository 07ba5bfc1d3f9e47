"""Verification suites shared by the CLI, the scripts and the acceptance tests."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .classifier import (
    classify_case,
    predicted_spectrum,
    scattered_elements,
    weight_two_points,
)
from .field_tower import FieldSpec
from .linear_sets import build_U, kernel_of_fb, linear_set_of_b, point_set
from .oracle import (
    VerificationReport,
    gammal_class_census,
    orbit_agreement,
    orbit_test_pairs,
    verify_glone_matrix,
)
from .projection_geometry import geometry_report, project_linear_set


def _map(fn, items, jobs: int):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def admissible_sizes(q: int) -> set[int]:
    return {q**3 + q**2 + q + 1, q**3 + q**2 + 1, q**3 + 1}


def _weights_one(args) -> dict:
    F, b = args
    L = linear_set_of_b(F, b)
    label = classify_case(F, b)
    spec = L.spectrum()
    kernel = kernel_of_fb(F, b)
    kernel_dim = {1: 0, F.q: 1, F.q2: 2, F.q**3: 3, F.order: 4}[len(kernel)]
    checks = {
        "spectrum": spec == predicted_spectrum(F, label),
        "size_admissible": L.size in admissible_sizes(F.q),
        "direction_bound": L.size >= F.q**3 + 1,
        "weights_at_most_two": max(spec) <= 2,
        "weight_two_points": weight_two_points(F, b) == set(L.points_of_weight(2)),
        "kernel_weight": L.weights.get(0, 0) == kernel_dim,
    }
    return {"b": b, "case": int(label), "size": L.size, "spectrum": spec, "checks": checks}


def verify_weights(F: FieldSpec, jobs: int = 1) -> VerificationReport:
    report = VerificationReport("weights", F.q)
    for row in _map(_weights_one, [(F, b) for b in F.elements()], jobs):
        report.record(all(row["checks"].values()), row)
    return report


def verify_orbits(F: FieldSpec, max_q: int | None = None, n_random: int = 200, seed: int = 0) -> VerificationReport:
    return orbit_agreement(F, orbit_test_pairs(F, n_random, seed), max_q)


def verify_glclass(F: FieldSpec, max_q: int | None = None) -> VerificationReport:
    report = VerificationReport("glclass", F.q)
    for b in F.elements():
        report.record(verify_glone_matrix(F, b), {"b": b, "part": "matrix"})
    limit = 2 if max_q is None else max_q
    if F.q <= limit:
        counts = {}
        for b in F.elements():
            rec = gammal_class_census(F, b, max_q=limit)
            counts[b] = rec["matching_polys"]
            report.record(rec["single_gl_orbit"], rec)
        report.details["matching_polys"] = counts
    return report


def _geometry_one(args) -> dict:
    F, b = args
    rep = geometry_report(F, b)
    checks = {
        "l_misses_sigma_prime": not rep["l_meets_sigma_prime"],
        "no_sigma_invariant_spread_line": rep["spread"]["sigma_invariant_lines"] == 0,
        "spread_partitions": rep["spread"]["partition"],
        "solid": rep["solid_rank"] == 4,
        "S_cap_K_empty": rep["S_cap_K_empty"],
        "S_cap_Kprime": rep["S_cap_Kprime_is_spread_image"],
        "two_point_tau_orbit": rep["meet_is_tau_orbit"],
        "special_line": all(rep["predicates"].values()),
        "routes_agree": rep["routes_agree"],
    }
    return {"b": b, "checks": checks}


def _projection_one(args) -> dict:
    F, b = args
    return {"b": b, "ok": project_linear_set(F, b) == set(point_set(F, build_U(F, b)))}


def verify_projection(F: FieldSpec, jobs: int = 1) -> VerificationReport:
    report = VerificationReport("projection", F.q)
    for row in _map(_projection_one, [(F, b) for b in F.elements()], jobs):
        report.record(row["ok"], row)
    return report


def verify_subgeometry(F: FieldSpec, jobs: int = 1) -> VerificationReport:
    report = VerificationReport("subgeometry", F.q)
    for row in _map(_geometry_one, [(F, b) for b in scattered_elements(F)], jobs):
        report.record(all(row["checks"].values()), row)
    return report


def verify_geometry(F: FieldSpec, jobs: int = 1) -> VerificationReport:
    proj = verify_projection(F, jobs)
    sub = verify_subgeometry(F, jobs)
    report = VerificationReport("geometry", F.q)
    report.pairs_tested = proj.pairs_tested + sub.pairs_tested
    report.agreements = proj.agreements + sub.agreements
    report.failures = proj.failures + sub.failures
    report.details = {"projection_b": proj.pairs_tested, "scattered_b": sub.pairs_tested}
    return report


SUITES = {
    "weights": lambda F, a: verify_weights(F, a.jobs),
    "orbits": lambda F, a: verify_orbits(F, a.max_oracle_q),
    "glclass": lambda F, a: verify_glclass(F, a.max_oracle_q),
    "geometry": lambda F, a: verify_geometry(F, a.jobs),
}

