"""The linear sets L_{U(b)} as projections of a canonical subgeometry of PG(3, q^4).

Fixed frame throughout:

* Sigma  = {<(u, u^q, u^(q^2), u^(q^3))>}, the points fixed by
  sigma: <(x0, x1, x2, x3)> -> <(x3^q, x0^q, x1^q, x2^q)>;
* Sigma' = points fixed by sigma^2, a PG(3, q^2);
* the vertex line l(b) = <(0, 0, 1, 0), (0, 1, 0, -b)>.

Lines are stored in reduced row echelon form and mapped to PG(5, q^4) by
the 2x2 minors (p01, p02, p03, p12, p13, p23), with Klein form
p01 p23 - p02 p13 + p03 p12. Because Sigma' is not GF(q^2)-rational in
this frame, ``induced_tau`` (the action sigma induces on Pluecker
coordinates, determined by pl(r^sigma) = induced_tau(pl(r))) stands in for
the coordinatewise Frobenius; K' is the set of Klein points fixed by
induced_tau^2 and K the set fixed by induced_tau itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .classifier import CaseLabel, classify_case
from .errors import DegenerateSpan, NotScattered, VertexMeetsSubgeometry
from .field_tower import Felt, FieldSpec
from .linear_sets import point_code

Vec = tuple[Felt, ...]

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


# -- linear algebra over GF(q^4) -------------------------------------------


def canonical(F: FieldSpec, v) -> Vec:
    """Scale so the first nonzero coordinate is 1."""
    for a in v:
        if a:
            s = F.inv(a)
            return tuple(F.mul(s, x) for x in v)
    raise DegenerateSpan("zero vector")


def rref(F: FieldSpec, rows) -> list[list[Felt]]:
    M = [list(r) for r in rows]
    out = []
    col = 0
    ncols = len(M[0]) if M else 0
    while M and col < ncols:
        piv = next((i for i, r in enumerate(M) if r[col]), None)
        if piv is None:
            col += 1
            continue
        r = M.pop(piv)
        s = F.inv(r[col])
        r = [F.mul(s, x) for x in r]
        M = [[F.sub(x, F.mul(row[col], y)) for x, y in zip(row, r)] for row in M]
        out = [[F.sub(x, F.mul(row[col], y)) for x, y in zip(row, r)] for row in out]
        out.append(r)
        col += 1
    return [row for row in out if any(row)]


def rank(F: FieldSpec, rows) -> int:
    return len(rref(F, rows))


def nullspace(F: FieldSpec, rows, ncols: int) -> list[list[Felt]]:
    """Basis of {v : r . v = 0 for all rows r}."""
    R = rref(F, rows)
    pivots = [next(j for j, x in enumerate(r) if x) for r in R]
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(R, pivots):
            v[pc] = F.neg(r[free])
        basis.append(v)
    return basis


def combine(F: FieldSpec, coeffs, vectors) -> list[Felt]:
    out = [0] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            out = [F.add(o, F.mul(c, x)) for o, x in zip(out, v)]
    return out


def projective_tuples(F: FieldSpec, dim: int, scalars=None):
    """Canonical coordinate tuples of PG(dim - 1, K), K given by ``scalars``."""
    scalars = list(F.elements()) if scalars is None else sorted(scalars)

    def rec(prefix, left):
        if left == 0:
            yield tuple(prefix)
            return
        for s in scalars:
            yield from rec(prefix + [s], left - 1)

    for lead in range(dim):
        for tail in rec([], dim - lead - 1):
            yield (0,) * lead + (1,) + tail


def subspace_points(F: FieldSpec, basis, scalars=None) -> list[Vec]:
    """All points of the projective span of ``basis`` (independent rows)."""
    return [canonical(F, combine(F, c, basis)) for c in projective_tuples(F, len(basis), scalars)]


# -- PG(3, q^4) --------------------------------------------------------------


def sigma_map(F: FieldSpec, P) -> Vec:
    x0, x1, x2, x3 = P
    return canonical(F, [F.frobenius(x, 1) for x in (x3, x0, x1, x2)])


def sigma_power(F: FieldSpec, P, k: int) -> Vec:
    P = canonical(F, P)
    for _ in range(k % 4):
        P = sigma_map(F, P)
    return P


def sigma_vec(F: FieldSpec, v) -> list[Felt]:
    """sigma on vectors, unnormalized (semilinear)."""
    x0, x1, x2, x3 = v
    return [F.frobenius(x, 1) for x in (x3, x0, x1, x2)]


def subgeometry_point(F: FieldSpec, u: Felt) -> Vec:
    return canonical(F, [F.frobenius(u, i) for i in range(4)])


def subgeometry_points(F: FieldSpec) -> set[Vec]:
    return {subgeometry_point(F, u) for u in range(1, F.order)}


def baer_subgeometry_points(F: FieldSpec) -> set[Vec]:
    """Sigma' directly: points <(a, c, a^(q^2), c^(q^2))>."""
    out = set()
    for a in F.elements():
        for c in F.elements():
            if a or c:
                out.add(canonical(F, [a, c, F.frobenius(a, 2), F.frobenius(c, 2)]))
    return out


@dataclass(frozen=True)
class LinePG3:
    rows: tuple[Vec, Vec]  # reduced row echelon basis

    @classmethod
    def through(cls, F: FieldSpec, P, Q) -> "LinePG3":
        R = rref(F, [P, Q])
        if len(R) != 2:
            raise DegenerateSpan("points do not span a line")
        return cls((tuple(R[0]), tuple(R[1])))


def line_points(F: FieldSpec, r: LinePG3) -> list[Vec]:
    return subspace_points(F, r.rows)


def sigma_line(F: FieldSpec, r: LinePG3, k: int = 1) -> LinePG3:
    return LinePG3.through(F, *(sigma_power(F, v, k) for v in r.rows))


def lines_meet(F: FieldSpec, r: LinePG3, s: LinePG3) -> bool:
    return rank(F, list(r.rows) + list(s.rows)) < 4


def point_on_line(F: FieldSpec, P, r: LinePG3) -> bool:
    return rank(F, list(r.rows) + [P]) == 2


def fixed_points_on(F: FieldSpec, r: LinePG3, k: int) -> list[Vec]:
    """Points of r fixed by sigma^k."""
    return [P for P in line_points(F, r) if sigma_power(F, P, k) == P]


def vertex_line(F: FieldSpec, b: Felt) -> LinePG3:
    return LinePG3.through(F, (0, 0, 1, 0), (0, 1, 0, F.neg(b)))


def plane_through(F: FieldSpec, P, Q, R) -> Vec:
    """Dual coordinates [pi0, ..., pi3] of the plane spanned by three points."""
    rows = [P, Q, R]
    pi = []
    for i in range(4):
        cols = [j for j in range(4) if j != i]
        m = [[row[j] for j in cols] for row in rows]
        d = F.sum(
            [
                F.mul(m[0][0], F.sub(F.mul(m[1][1], m[2][2]), F.mul(m[1][2], m[2][1]))),
                F.neg(F.mul(m[0][1], F.sub(F.mul(m[1][0], m[2][2]), F.mul(m[1][2], m[2][0])))),
                F.mul(m[0][2], F.sub(F.mul(m[1][0], m[2][1]), F.mul(m[1][1], m[2][0]))),
            ]
        )
        pi.append(d if i % 2 == 0 else F.neg(d))
    if not any(pi):
        raise DegenerateSpan("points do not span a plane")
    return canonical(F, pi)


def plane_formula(F: FieldSpec, b: Felt, u: Felt) -> Vec:
    """[u^(q^3) + b u^q, -b u, 0, -u]."""
    fr = F.frobenius
    return canonical(
        F, [F.add(fr(u, 3), F.mul(b, fr(u, 1))), F.neg(F.mul(b, u)), 0, F.neg(u)]
    )


def project_linear_set(F: FieldSpec, b: Felt) -> set[int]:
    """Project Sigma from l(b) onto the pencil of planes through l(b).

    A plane [pi0, b pi3, 0, pi3] of the pencil is identified with the point
    <(-pi3, pi0)> of PG(1, q^4).
    """
    ell = vertex_line(F, b)
    out = set()
    for u in range(1, F.order):
        Pu = subgeometry_point(F, u)
        try:
            pi = plane_through(F, *ell.rows, Pu)
        except DegenerateSpan:
            raise VertexMeetsSubgeometry(f"l({b}) contains a point of Sigma") from None
        if pi != plane_formula(F, b, u):
            raise AssertionError(f"plane through l and P_u disagrees with formula at u={u}")
        out.add(point_code(F, F.neg(pi[3]), pi[0]))
    return out


# -- spread of Sigma' ----------------------------------------------------------


def regular_spread_from(F: FieldSpec, b: Felt) -> list[LinePG3]:
    """Lines <P, P^(sigma^2)>, P on l(b)."""
    ell = vertex_line(F, b)
    if fixed_points_on(F, ell, 2):
        raise VertexMeetsSubgeometry(f"l({b}) meets Sigma'")
    return [LinePG3.through(F, P, sigma_power(F, P, 2)) for P in line_points(F, ell)]


def spread_report(F: FieldSpec, spread: list[LinePG3]) -> dict:
    covered: list[Vec] = []
    for r in spread:
        covered.extend(fixed_points_on(F, r, 2))
    n_baer = (F.q2**4 - 1) // (F.q2 - 1)
    return {
        "lines": len(spread),
        "distinct_lines": len(set(spread)),
        "sigma2_invariant": all(sigma_line(F, r, 2) == r for r in spread),
        "points_per_line": sorted({len(fixed_points_on(F, r, 2)) for r in spread}),
        "partition": len(covered) == len(set(covered)) == n_baer,
        "sigma_invariant_lines": sum(sigma_line(F, r, 1) == r for r in spread),
    }


# -- Pluecker embedding ----------------------------------------------------------


def _minors(F: FieldSpec, x, y) -> list[Felt]:
    return [F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])) for i, j in PAIRS]


def pluecker(F: FieldSpec, r: LinePG3 | tuple) -> Vec:
    x, y = r.rows if isinstance(r, LinePG3) else r
    m = _minors(F, x, y)
    if not any(m):
        raise DegenerateSpan("points do not span a line")
    return canonical(F, m)


def klein_form(F: FieldSpec, X) -> Felt:
    p01, p02, p03, p12, p13, p23 = X
    return F.add(F.sub(F.mul(p01, p23), F.mul(p02, p13)), F.mul(p03, p12))


def tau_map(F: FieldSpec, X) -> Vec:
    """Coordinatewise q-th power on PG(5, .)."""
    return canonical(F, [F.frobenius(x, 1) for x in X])


# sigma sends new coordinate j to old coordinate _PI[j]
_PI = (3, 0, 1, 2)


def _induced_index():
    out = []
    for i, j in PAIRS:
        a, c = _PI[i], _PI[j]
        sign = 1 if a < c else -1
        out.append((PAIRS.index((min(a, c), max(a, c))), sign))
    return tuple(out)


_INDUCED = _induced_index()


def induced_tau_vec(F: FieldSpec, X) -> list[Felt]:
    out = []
    for src, sign in _INDUCED:
        v = F.frobenius(X[src], 1)
        out.append(v if sign > 0 else F.neg(v))
    return out


def induced_tau(F: FieldSpec, X, k: int = 1) -> Vec:
    v = list(X)
    for _ in range(k):
        v = induced_tau_vec(F, v)
    return canonical(F, v)


def _fix_vector(F: FieldSpec, X) -> list[Felt]:
    """Rescale X so that induced_tau^2 fixes it as a vector, not just projectively."""
    Y = induced_tau_vec(F, induced_tau_vec(F, X))
    i = next(j for j, x in enumerate(X) if x)
    lam = F.div(Y[i], X[i])
    if [F.mul(lam, x) for x in X] != Y:
        raise AssertionError("point not fixed by induced_tau^2")
    mu = F.solve_power_root(F.inv(lam), F.q2 - 1)
    return [F.mul(mu, x) for x in X]


def solid_report(F: FieldSpec, spread: list[LinePG3]) -> dict:
    """The solid S spanned by the spread's Pluecker points and its sections.

    Returns S, S cap K', S cap K and the points of S cap S^tau cap K'.
    """
    images = [pluecker(F, r) for r in spread]
    S = rref(F, images)
    # four independent images, rescaled to induced_tau^2-fixed vectors
    basis: list[list[Felt]] = []
    for X in images:
        if rank(F, basis + [list(X)]) > len(basis):
            basis.append(_fix_vector(F, X))
        if len(basis) == 4:
            break
    sub_q2 = F.subfield(2)
    fixed_pts = subspace_points(F, basis, sub_q2) if len(basis) == 4 else []
    S_K2 = {X for X in fixed_pts if klein_form(F, X) == 0}
    S_K = {X for X in S_K2 if induced_tau(F, X) == X}
    T = rref(F, [induced_tau_vec(F, row) for row in S])
    # S cap T: combinations of T's rows annihilated by S's orthogonal complement
    H = nullspace(F, S, 6)
    cons = [[F.sum(F.mul(h[i], t[i]) for i in range(6)) for t in T] for h in H]
    coef = nullspace(F, cons, len(T)) if cons else [[int(i == j) for j in range(len(T))] for i in range(len(T))]
    inter = rref(F, [combine(F, c, T) for c in coef])
    inter_pts = subspace_points(F, inter) if inter else []
    meet = sorted(
        X for X in inter_pts if klein_form(F, X) == 0 and induced_tau(F, X, 2) == X
    )
    return {
        "images": images,
        "solid_rank": len(S),
        "S_cap_Kprime": S_K2,
        "S_cap_K": S_K,
        "intersection_rank": len(inter),
        "meet_points": meet,
    }


# -- the special line --------------------------------------------------------------


def special_line_predicates(F: FieldSpec, r: LinePG3, ell: LinePG3) -> dict[str, bool]:
    rs = sigma_line(F, r, 1)
    return {
        "r_meets_l": lines_meet(F, r, ell),
        "r_sigma_meets_l": lines_meet(F, rs, ell),
        "skew": not lines_meet(F, r, rs),
        "sigma2_fixed": sigma_line(F, r, 2) == r,
    }


def special_lines_exhaustive(F: FieldSpec, b: Felt) -> list[LinePG3]:
    ell = vertex_line(F, b)
    return [
        r for r in regular_spread_from(F, b) if all(special_line_predicates(F, r, ell).values())
    ]


def special_lines_pluecker(F: FieldSpec, b: Felt, report: dict | None = None) -> list[LinePG3]:
    """Pull back the two points of S cap S^tau cap K' to spread lines."""
    spread = regular_spread_from(F, b)
    rep = solid_report(F, spread) if report is None else report
    by_image = dict(zip(rep["images"], spread))
    return [by_image[X] for X in rep["meet_points"] if X in by_image]


def find_special_line(F: FieldSpec, b: Felt) -> LinePG3:
    """A line r with r, r^sigma skew, both meeting l(b), and r^(sigma^2) = r."""
    if classify_case(F, b) != CaseLabel.SCATTERED:
        raise NotScattered(f"L_U({b}) is not scattered")
    lines = special_lines_pluecker(F, b)
    if not lines:
        lines = special_lines_exhaustive(F, b)
    r = min(lines, key=lambda line: line.rows)
    if not all(special_line_predicates(F, r, vertex_line(F, b)).values()):
        raise AssertionError("special line fails its predicates")
    return r


def geometry_report(F: FieldSpec, b: Felt) -> dict:
    """Every check on the projection picture for one scattered b."""
    ell = vertex_line(F, b)
    spread = regular_spread_from(F, b)
    sp = spread_report(F, spread)
    solid = solid_report(F, spread)
    plk = special_lines_pluecker(F, b, solid)
    exh = special_lines_exhaustive(F, b)
    meet = solid["meet_points"]
    tau_orbit = len(meet) == 2 and induced_tau(F, meet[0]) == meet[1] and induced_tau(F, meet[1]) == meet[0]
    r = min(plk or exh, key=lambda line: line.rows)
    return {
        "b": b,
        "vertex_line": [list(v) for v in ell.rows],
        "l_meets_sigma": bool(fixed_points_on(F, ell, 1)),
        "l_meets_sigma_prime": bool(fixed_points_on(F, ell, 2)),
        "spread": sp,
        "solid_rank": solid["solid_rank"],
        "S_cap_Kprime_size": len(solid["S_cap_Kprime"]),
        "S_cap_Kprime_is_spread_image": solid["S_cap_Kprime"] == set(solid["images"]),
        "S_cap_K_empty": not solid["S_cap_K"],
        "meet_points": [list(X) for X in meet],
        "meet_is_tau_orbit": tau_orbit,
        "special_line": [list(v) for v in r.rows],
        "special_line_sigma": [list(v) for v in sigma_line(F, r).rows],
        "special_line_pluecker": list(pluecker(F, r)),
        "predicates": special_line_predicates(F, r, ell),
        "routes_agree": set(plk) == set(exh) and len(exh) > 0,
    }


def random_line(F: FieldSpec, rng) -> LinePG3:
    while True:
        P = [rng.randrange(F.order) for _ in range(4)]
        Q = [rng.randrange(F.order) for _ in range(4)]
        if rank(F, [P, Q]) == 2:
            return LinePG3.through(F, P, Q)


def all_points_pg3(F: FieldSpec):
    return projective_tuples(F, 4)


def pairwise_disjoint_on(F: FieldSpec, spread: list[LinePG3], k: int = 2) -> bool:
    sets = [set(fixed_points_on(F, r, k)) for r in spread]
    return all(not (A & B) for A, B in combinations(sets, 2))
