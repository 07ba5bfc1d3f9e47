"""Brute-force verifiers, independent of the norm formulas in ``classifier``.

PGL(2, q^4) is enumerated with the first row normalized: rows (1, B) for
B = 0, 1, ... and then (0, 1); for each first row every second row (C, D)
is scanned (C major) as one numpy batch. Candidates are discarded as soon
as one source point lands outside the target set, so an exhaustive scan
costs a few array passes per first row. Witnesses come out in
lexicographic matrix order and are re-checked point by point before being
returned.

Only graph subspaces U_g = {(x, g(x))} are enumerated by
``gammal_class_census``; this loses nothing because <(0, 1)> lies in no
L_{U(b)}, so any subspace defining L_{U(b)} is of graph form.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import FieldTooLarge, OracleMismatch
from .field_tower import Felt, FieldSpec
from .linear_sets import (
    QPoly,
    adjoint,
    build_U,
    compose_scalar,
    eval_qpoly,
    graph,
    point_code,
    point_coords,
    point_set,
)


@dataclass(frozen=True)
class Mat2:
    """(A B; C D) acting on columns after the twist x -> x^(p^k)."""

    A: Felt
    B: Felt
    C: Felt
    D: Felt
    k: int = 0

    def det(self, F: FieldSpec) -> Felt:
        return F.sub(F.mul(self.A, self.D), F.mul(self.B, self.C))

    def apply(self, F: FieldSpec, x: Felt, y: Felt) -> tuple[Felt, Felt]:
        if self.k:
            e = F.p**self.k
            x, y = F.pow(x, e), F.pow(y, e)
        return (
            F.add(F.mul(self.A, x), F.mul(self.B, y)),
            F.add(F.mul(self.C, x), F.mul(self.D, y)),
        )

    def scaled(self, F: FieldSpec, lam: Felt) -> "Mat2":
        return Mat2(*(F.mul(lam, v) for v in (self.A, self.B, self.C, self.D)), k=self.k)

    def apply_point(self, F: FieldSpec, P: int) -> int:
        return point_code(F, *self.apply(F, *point_coords(F, P)))


def _guard(F: FieldSpec, max_q: int | None, default: int) -> None:
    limit = default if max_q is None else max_q
    if F.q > limit:
        raise FieldTooLarge(f"q={F.q} exceeds oracle guard q<={limit}")


@lru_cache(maxsize=8)
def _second_rows(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    codes = np.arange(F.order, dtype=np.int64)
    return np.repeat(codes, F.order), np.tile(codes, F.order)


def _first_rows(F: FieldSpec) -> Iterator[tuple[Felt, Felt]]:
    for B in range(F.order):
        yield 1, B
    yield 0, 1


def twist_points(F: FieldSpec, points, k: int) -> list[int]:
    e = F.p**k
    return sorted(P if P == F.order else F.pow(P, e) for P in points)


def pgl_witnesses(F: FieldSpec, src, dst) -> Iterator[Mat2]:
    """All normalized M in PGL(2, q^4) with M(src) = dst, in lexicographic order."""
    src, dst = sorted(src), sorted(dst)
    if len(src) != len(dst):
        return
    member = np.zeros(F.order + 1, dtype=bool)
    member[dst] = True
    Cs, Ds = _second_rows(F)
    coords = [point_coords(F, P) for P in src]
    for A, B in _first_rows(F):
        det = F.vsub(F.vmul(A, Ds), F.vmul(B, Cs))
        idx = np.nonzero(det != 0)[0]
        for x0, y0 in coords:
            if len(idx) == 0:
                break
            s = F.add(F.mul(A, x0), F.mul(B, y0))
            C, D = Cs[idx], Ds[idx]
            t = F.vadd(F.vmul(C, x0), F.vmul(D, y0))
            img = F.vdiv(t, s) if s else np.full(len(idx), F.order)
            idx = idx[member[img]]
        # injective on points, equal sizes: image inside dst means onto dst
        for i in idx.tolist():
            yield Mat2(A, B, int(Cs[i]), int(Ds[i]))


def _check_point_witness(F: FieldSpec, M: Mat2, src, dst) -> Mat2:
    image = sorted(M.apply_point(F, P) for P in src)
    if image != sorted(dst):
        raise OracleMismatch(f"witness {M} does not map the source set onto the target")
    return M


def bf_pgl_equivalent(F: FieldSpec, b: Felt, c: Felt, max_q: int | None = None) -> Mat2 | None:
    _guard(F, max_q, 4)
    src = sorted(point_set(F, build_U(F, b)))
    dst = sorted(point_set(F, build_U(F, c)))
    for M in pgl_witnesses(F, src, dst):
        return _check_point_witness(F, M, src, dst)
    return None


def bf_pgammal_equivalent(F: FieldSpec, b: Felt, c: Felt, max_q: int | None = None) -> Mat2 | None:
    _guard(F, max_q, 4)
    base = sorted(point_set(F, build_U(F, b)))
    dst = sorted(point_set(F, build_U(F, c)))
    for k in range(F.n):
        src = twist_points(F, base, k)
        for M in pgl_witnesses(F, src, dst):
            W = Mat2(M.A, M.B, M.C, M.D, k)
            return _check_point_witness(F, W, base, dst)
    return None


def _unit_coset_reps(F: FieldSpec) -> list[Felt]:
    """One representative of each coset of GF(q)* in GF(q^4)*."""
    return [F.exp(j) for j in range(F.N // (F.q - 1))]


def bf_gl_equivalent_subspace(
    F: FieldSpec, f: QPoly, h: QPoly, max_q: int | None = None
) -> Mat2 | None:
    """Some M in GL(2, q^4) with M U_f = U_h, or None.

    Every such M maps L_f onto L_h, so M is a scalar multiple of one of the
    normalized point-set witnesses; each of those is tried against every
    scalar modulo GF(q)* (which fixes subspaces). The scan is exhaustive.
    """
    _guard(F, max_q, 3)
    src = sorted(point_set(F, f))
    dst = sorted(point_set(F, h))
    basis = [(x, eval_qpoly(F, f, x)) for x in (F.exp(i) for i in range(4))]
    lams = _unit_coset_reps(F)
    for M in pgl_witnesses(F, src, dst):
        images = [M.apply(F, x, y) for x, y in basis]
        for lam in lams:
            if all(eval_qpoly(F, h, F.mul(lam, u)) == F.mul(lam, w) for u, w in images):
                W = M.scaled(F, lam)
                if {W.apply(F, x, y) for x, y in graph(F, f)} != graph(F, h):
                    raise OracleMismatch(f"subspace witness {W} failed")
                return W
    return None


def verify_glone_matrix(F: FieldSpec, b: Felt) -> bool:
    """diag(b^(q^3), b^(q^2)) maps U(b) onto U(b)^(q^2); U(0) = U(0)^(q^2)."""
    f = build_U(F, b)
    U = graph(F, f)
    U_twisted = {(F.frobenius(x, 2), F.frobenius(y, 2)) for x, y in U}
    if b == 0:
        return U == U_twisted
    M = Mat2(F.frobenius(b, 3), 0, 0, F.frobenius(b, 2))
    for u in F.elements():
        v = F.mul(F.frobenius(b, 1), F.frobenius(u, 2))
        lhs = M.apply(F, u, eval_qpoly(F, f, u))
        rhs = (F.frobenius(v, 2), F.frobenius(eval_qpoly(F, f, v), 2))
        if lhs != rhs:
            return False
    return {M.apply(F, x, y) for x, y in U} == U_twisted


@lru_cache(maxsize=2)
def _all_graph_point_codes(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sorted point codes of <(x, g(x))>, x != 0, for every q-polynomial g.

    Row r corresponds to coefficients given by the base-q^4 digits of r
    (c0 least significant).
    """
    Q = F.order
    r = np.arange(Q**4, dtype=np.int64)
    coeffs = np.stack([(r // Q**i) % Q for i in range(4)], axis=1)
    xs = np.arange(1, Q, dtype=np.int64)
    vals = np.zeros((len(r), len(xs)), dtype=np.int64)
    for i in range(4):
        xp = F.vfrobenius(xs, i)[None, :]
        vals = F.vadd(vals, F.vmul(coeffs[:, i : i + 1], xp))
    codes = F.vdiv(vals, xs[None, :])
    return coeffs, np.sort(codes, axis=1)


def polys_with_point_set(F: FieldSpec, target) -> list[QPoly]:
    coeffs, codes = _all_graph_point_codes(F)
    target = np.array(sorted(target), dtype=np.int64)
    member = np.zeros(F.order + 1, dtype=bool)
    member[target] = True
    distinct = 1 + np.count_nonzero(np.diff(codes, axis=1), axis=1)
    ok = member[codes].all(axis=1) & (distinct == len(target))
    return [QPoly(tuple(int(c) for c in row)) for row in coeffs[ok]]


def gammal_class_census(F: FieldSpec, b: Felt, max_q: int | None = None) -> dict:
    """All g with L_{U_g} = L_{U(b)}; check each U_g is GL-equivalent to U(b)."""
    _guard(F, max_q, 2)
    f = build_U(F, b)
    matches = polys_with_point_set(F, point_set(F, f))
    f_adj = adjoint(F, f)
    scaled = {compose_scalar(F, f, lam) for lam in range(1, F.order)}
    scaled_adj = {compose_scalar(F, f_adj, lam) for lam in range(1, F.order)}
    failures = []
    for g in matches:
        if bf_gl_equivalent_subspace(F, f, g, max_q=F.q) is None:
            failures.append(list(g.coeffs))
    return {
        "check": "glclass",
        "q": F.q,
        "b": b,
        "matching_polys": len(matches),
        "scaling_route": sum(g in scaled for g in matches),
        "adjoint_route": sum(g in scaled_adj for g in matches),
        "either_route": sum(g in scaled or g in scaled_adj for g in matches),
        "single_gl_orbit": not failures and len(matches) > 0,
        "failures": failures,
    }


# -- the coefficient system ------------------------------------------------


def sistema_residuals(F: FieldSpec, b: Felt, c: Felt, k: int, M: Mat2) -> tuple[Felt, ...]:
    """Left-hand sides of the four coefficient equations for psi = p^k."""
    fr = F.frobenius
    A, B, C, D = M.A, M.B, M.C, M.D
    beta = F.pow(b, F.p**k)
    return (
        F.sub(fr(A, 3), D),
        F.add(F.mul(F.mul(fr(B, 1), fr(beta, 1)), c), fr(B, 3)),
        F.sub(F.mul(fr(A, 1), c), F.mul(D, beta)),
        F.sub(F.add(F.mul(fr(B, 1), c), F.mul(fr(B, 3), fr(beta, 3))), C),
    )


def maps_subspace(F: FieldSpec, M: Mat2, b: Felt, c: Felt) -> bool:
    """Direct check that M (with its twist) maps U(b) onto U(c)."""
    return {M.apply(F, x, y) for x, y in graph(F, build_U(F, b))} == graph(F, build_U(F, c))


def _solves(F: FieldSpec, b: Felt, c: Felt, k: int, M: Mat2) -> bool:
    return M.det(F) != 0 and not any(sistema_residuals(F, b, c, k, M))


def sistema_diagonal_witness(F: FieldSpec, b: Felt, c: Felt, k: int) -> Mat2 | None:
    """A = delta^q, B = C = 0, D = delta with delta^(q^2-1) = b^psi / c."""
    beta = F.pow(b, F.p**k)
    if c == 0 or beta == 0:
        return Mat2(1, 0, 0, 1, k) if b == c == 0 else None
    delta = F.solve_power_root(F.div(beta, c), F.q2 - 1)
    if delta is None:
        return None
    return Mat2(F.frobenius(delta, 1), 0, 0, delta, k)


def sistema_swap_witness(F: FieldSpec, b: Felt, c: Felt, k: int) -> Mat2 | None:
    """Anti-diagonal solution for psi = p^s q^3 with b^(p^s) c = eps^(q^2-1).

    A = D = 0, B = (rho eps)^(q^3), C = eps rho c (1 - b^(p^s (q^2+1))),
    where rho^(q^2-1) = -1.
    """
    if b == 0 or c == 0:
        return None
    ps = F.p ** ((k - 3 * F.e) % F.n)
    eps = F.solve_power_root(F.mul(F.pow(b, ps), c), F.q2 - 1)
    if eps is None:
        return None
    rho = F.solve_power_root(F.minus_one, F.q2 - 1)
    B = F.frobenius(F.mul(rho, eps), 3)
    C = F.mul(F.mul(F.mul(eps, rho), c), F.sub(1, F.pow(b, ps * (F.q2 + 1))))
    return Mat2(0, B, C, 0, k)


def solve_sistema(F: FieldSpec, b: Felt, c: Felt, k: int) -> Mat2 | None:
    """A solution of the coefficient system with AD - BC != 0, or None.

    Tries the diagonal (D != 0) and anti-diagonal (D = 0) constructions and
    falls back to a complete search: D is 0 or a root of
    D^(q^2-1) = b^psi / c, A = D^q, B runs over all roots of the
    B-equation and C is then forced.
    """
    for build in (sistema_diagonal_witness, sistema_swap_witness):
        M = build(F, b, c, k)
        if M is not None and _solves(F, b, c, k, M):
            return _checked(F, M, b, c)
    beta = F.pow(b, F.p**k)
    Ds = [0]
    if c and beta:
        delta = F.solve_power_root(F.div(beta, c), F.q2 - 1)
        if delta is not None:
            Ds += [F.mul(delta, mu) for mu in F.subfield(2) if mu]
    elif beta == 0 and c == 0:
        Ds += list(range(1, F.order))
    for D in sorted(Ds):
        A = F.frobenius(D, 1)
        for B in F.elements():
            C = F.add(F.mul(F.frobenius(B, 1), c), F.mul(F.frobenius(B, 3), F.frobenius(beta, 3)))
            M = Mat2(A, B, C, D, k)
            if _solves(F, b, c, k, M):
                return _checked(F, M, b, c)
    return None


def _checked(F: FieldSpec, M: Mat2, b: Felt, c: Felt) -> Mat2:
    if not maps_subspace(F, M, b, c):
        raise OracleMismatch(f"system solution {M} does not map U({b}) onto U({c})")
    return M


# -- reports ----------------------------------------------------------------


@dataclass
class VerificationReport:
    check: str
    q: int
    pairs_tested: int = 0
    agreements: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.agreements == self.pairs_tested

    def record(self, ok: bool, item) -> None:
        self.pairs_tested += 1
        if ok:
            self.agreements += 1
        else:
            self.failures.append(item)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def orbit_agreement(
    F: FieldSpec, pairs, max_q: int | None = None, groups=("PGL", "PGammaL")
) -> VerificationReport:
    """Compare oracle and closed-form equivalence on the given (b, c) pairs."""
    from .classifier import pgammal_equivalent, pgl_equivalent

    report = VerificationReport("orbits", F.q)
    for b, c in pairs:
        if "PGL" in groups:
            got = bf_pgl_equivalent(F, b, c, max_q) is not None
            report.record(got == pgl_equivalent(F, b, c), {"group": "PGL", "b": b, "c": c, "oracle": got})
        if "PGammaL" in groups:
            got = bf_pgammal_equivalent(F, b, c, max_q) is not None
            report.record(
                got == pgammal_equivalent(F, b, c), {"group": "PGammaL", "b": b, "c": c, "oracle": got}
            )
    return report


def orbit_test_pairs(F: FieldSpec, n_random: int = 200, seed: int = 0) -> list[tuple[Felt, Felt]]:
    """All ordered pairs of PGL and PGammaL class representatives, plus random pairs."""
    from .classifier import census

    reps = sorted(set(census(F, "PGL").reps()) | set(census(F, "PGammaL").reps()))
    pairs = [(b, c) for b in reps for c in reps]
    rng = random.Random(seed)
    pairs += [(rng.randrange(F.order), rng.randrange(F.order)) for _ in range(n_random)]
    return pairs
