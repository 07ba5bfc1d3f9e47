"""Closed-form decisions for the family L_{U(b)}.

Case labels come from the two norms of b, projective and collineation
equivalence from the invariant b^(q^2+1), and the weight-two points are
recovered by solving for the scalars lambda directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from functools import lru_cache

import numpy as np

from .errors import NormNotOne
from .field_tower import Felt, FieldSpec
from .linear_sets import build_U, eval_qpoly, point_code


class CaseLabel(IntEnum):
    SCATTERED = 1  # N_{q^4/q}(b) != 1
    ONE_DOUBLE_POINT = 2  # N_{q^4/q^2}(b) == 1
    Q_PLUS_ONE_DOUBLE_POINTS = 3  # N_{q^4/q^2}(b) != 1 == N_{q^4/q}(b)


def classify_case(F: FieldSpec, b: Felt) -> CaseLabel:
    if F.norm(b, 1) != 1:
        return CaseLabel.SCATTERED
    if F.norm(b, 2) == 1:
        return CaseLabel.ONE_DOUBLE_POINT
    return CaseLabel.Q_PLUS_ONE_DOUBLE_POINTS


def predicted_spectrum(F: FieldSpec, label: CaseLabel) -> dict[int, int]:
    q = F.q
    if label == CaseLabel.SCATTERED:
        return {1: q**3 + q**2 + q + 1}
    if label == CaseLabel.ONE_DOUBLE_POINT:
        return {1: q**3 + q**2, 2: 1}
    return {1: q**3 - q, 2: q + 1}


def norm_invariant(F: FieldSpec, b: Felt) -> Felt:
    return F.pow(b, F.q2 + 1)


def pgl_equivalent(F: FieldSpec, b: Felt, c: Felt) -> bool:
    if b == 0 or c == 0:
        return b == c
    nb, nc = norm_invariant(F, b), norm_invariant(F, c)
    return nc == nb or nc == F.pow(nb, -F.q)


def pgammal_equivalent(F: FieldSpec, b: Felt, c: Felt) -> bool:
    if b == 0 or c == 0:
        return b == c
    nb, nc = norm_invariant(F, b), norm_invariant(F, c)
    for s in range(F.n):
        t = F.pow(nb, F.p**s)
        if nc == t or nc == F.inv(t):
            return True
    return False


GROUPS = {"PGL": pgl_equivalent, "PGammaL": pgammal_equivalent}


@dataclass
class EquivClass:
    group: str
    case: CaseLabel
    norm_invariant: Felt
    rep: Felt
    members: list[Felt] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class Census:
    q: int
    group: str
    classes: list[EquivClass]

    def counts(self) -> dict[CaseLabel, int]:
        out = {label: 0 for label in CaseLabel}
        for cl in self.classes:
            out[cl.case] += 1
        return out

    def reps(self) -> list[Felt]:
        return [cl.rep for cl in self.classes]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "group": self.group,
            "classes": [
                {
                    "case": int(cl.case),
                    "norm_invariant": cl.norm_invariant,
                    "rep": cl.rep,
                    "size": cl.size,
                }
                for cl in self.classes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def census(F: FieldSpec, group: str = "PGL", elements=None) -> Census:
    """Partition the b values (default: all of GF(q^4)) into equivalence classes.

    The predicates only see b through b^(q^2+1) (and b = 0), so elements
    are first bucketed by that invariant; buckets are then merged by the
    predicate on their smallest members.
    """
    equiv = GROUPS[group]
    elements = sorted(F.elements() if elements is None else elements)
    buckets: dict[tuple[bool, Felt], list[Felt]] = {}
    for b in elements:
        key = (b == 0, norm_invariant(F, b))
        buckets.setdefault(key, []).append(b)
    classes: list[EquivClass] = []
    for members in sorted(buckets.values(), key=lambda m: m[0]):
        rep = members[0]
        for cl in classes:
            if equiv(F, cl.rep, rep):
                cl.members.extend(members)
                break
        else:
            classes.append(
                EquivClass(group, classify_case(F, rep), norm_invariant(F, rep), rep, list(members))
            )
    for cl in classes:
        cl.members.sort()
    classes.sort(key=lambda cl: cl.rep)
    return Census(F.q, group, classes)


def scattered_elements(F: FieldSpec) -> list[Felt]:
    return [b for b in F.elements() if classify_case(F, b) == CaseLabel.SCATTERED]


# -- proof-trace solvers --------------------------------------------------


@lru_cache(maxsize=8)
def _lambda_powers(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """lambda outside GF(q), and (lambda - lambda^q)^((q-1)(q^2+1)) for each."""
    lam = np.arange(F.order, dtype=np.int64)
    d = F.vsub(lam, F.vfrobenius(lam, 1))
    keep = d != 0
    return lam[keep], F.vpow(d[keep], (F.q - 1) * (F.q2 + 1))


def weight_two_points(F: FieldSpec, b: Felt) -> set[int]:
    """Points of weight two of L_{U(b)}, found through the lambda equations.

    For lambda outside GF(q) put d = lambda - lambda^q. A point P_x has
    weight two iff some such lambda solves d^(q^3-1) = b x^(q-q^3); taking
    (q^2+1)-th powers removes x, leaving d^((q-1)(q^2+1)) = b^(q^2+1). For
    each lambda passing that test, x is recovered as a (q^3-q)-th root and
    its GF(q^2)*-multiples give the remaining solutions.
    """
    q = F.q
    nb = norm_invariant(F, b)
    if nb == 0:
        return set()
    fb = build_U(F, b)
    units_q2 = [mu for mu in F.subfield(2) if mu]
    lams, dpow = _lambda_powers(F)
    points: set[int] = set()
    covered: set[Felt] = set()
    for lam in lams[dpow == nb].tolist():
        d = F.sub(lam, F.frobenius(lam, 1))
        # x^(q^3-q) = b / d^(q^3-1)
        x0 = F.solve_power_root(F.div(b, F.pow(d, q**3 - 1)), q**3 - q)
        if x0 is None:
            raise AssertionError("reduced lambda equation solvable but x equation is not")
        # the pair (lambda, x0) must solve the unreduced weight equation
        assert eval_qpoly(F, fb, F.mul(lam, x0)) == F.mul(lam, eval_qpoly(F, fb, x0))
        if x0 in covered:
            continue
        for mu in units_q2:
            x = F.mul(mu, x0)
            covered.add(x)
            points.add(point_code(F, x, eval_qpoly(F, fb, x)))
    return points


def quadric_hyperplane_witness(F: FieldSpec, b: Felt) -> tuple[Felt, Felt]:
    """Return (mu, z): b = mu^(q-1), z^((q-1)(q^2+1)) = 1 and Tr(mu z) = 0.

    z represents a point of the elliptic quadric {z^((q-1)(q^2+1)) = 1} of
    PG(3, q) lying on the hyperplane Tr(mu z) = 0.
    """
    if b == 0 or F.norm(b, 1) != 1:
        raise NormNotOne(f"N(b) != 1 for b={b}")
    mu = F.solve_power_root(b, F.q - 1)
    k = (F.q - 1) * (F.q2 + 1)
    for z in range(1, F.order):
        if F.pow(z, k) == 1 and F.trace(F.mul(mu, z)) == 0:
            return mu, z
    raise AssertionError("quadric misses the hyperplane")


def lambda_from_witness(F: FieldSpec, mu: Felt, z: Felt) -> Felt:
    """Some lambda with lambda - lambda^q = mu z (exists since Tr(mu z) = 0)."""
    target = F.mul(mu, z)
    xs = np.arange(F.order)
    diffs = F.vsub(xs, F.vfrobenius(xs, 1))
    hits = np.nonzero(diffs == target)[0]
    if len(hits) == 0:
        raise AssertionError("mu z is not in the image of x - x^q")
    return int(hits[0])


def quadric_points(F: FieldSpec) -> list[Felt]:
    """Representatives z of the elliptic quadric, one per GF(q)-point."""
    k = (F.q - 1) * (F.q2 + 1)
    seen: set[Felt] = set()
    units_q = [a for a in F.subfield(1) if a]
    reps = []
    for z in range(1, F.order):
        if z in seen or F.pow(z, k) != 1:
            continue
        reps.append(z)
        seen.update(F.mul(t, z) for t in units_q)
    return reps
