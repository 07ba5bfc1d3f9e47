"""q-polynomials over GF(q^4), the subspaces U(b) and their linear sets in PG(1, q^4).

Points of PG(1, q^4) are ints: ``y`` stands for <(1, y)> and ``F.order``
(the sentinel ``q^4``) for <(0, 1)>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .field_tower import Felt, FieldSpec


def infinity(F: FieldSpec) -> int:
    return F.order


def point_code(F: FieldSpec, x: Felt, y: Felt) -> int:
    """Canonical code of <(x, y)>, normalizing the first nonzero coordinate to 1."""
    if x == 0:
        if y == 0:
            raise ValueError("zero vector spans no point")
        return F.order
    return F.div(y, x)


def point_coords(F: FieldSpec, code: int) -> tuple[Felt, Felt]:
    return (0, 1) if code == F.order else (1, code)


@dataclass(frozen=True)
class QPoly:
    """f(x) = c0 x + c1 x^q + c2 x^(q^2) + c3 x^(q^3)."""

    coeffs: tuple[Felt, Felt, Felt, Felt]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("a q-polynomial over GF(q^4) has 4 coefficients")


IDENTITY = QPoly((1, 0, 0, 0))


def build_U(F: FieldSpec, b: Felt) -> QPoly:
    """f_b(x) = b x^q + x^(q^3); its graph is U(b)."""
    return QPoly((0, F.check(b), 0, 1))


def eval_qpoly(F: FieldSpec, f: QPoly, x: Felt) -> Felt:
    return F.sum(F.mul(c, F.frobenius(x, i)) for i, c in enumerate(f.coeffs) if c)


def veval_qpoly(F: FieldSpec, f: QPoly, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    out = np.zeros_like(xs)
    for i, c in enumerate(f.coeffs):
        if c:
            out = F.vadd(out, F.vmul(c, F.vfrobenius(xs, i)))
    return out


def compose_scalar(F: FieldSpec, f: QPoly, lam: Felt) -> QPoly:
    """x -> f(lam x) / lam."""
    return QPoly(tuple(F.mul(c, F.pow(lam, F.q**i - 1)) for i, c in enumerate(f.coeffs)))


def adjoint(F: FieldSpec, f: QPoly) -> QPoly:
    """Adjoint for the form <x, y> = Tr(xy): Tr(f(x) y) = Tr(x adj(f)(y))."""
    out = [0] * 4
    for i, c in enumerate(f.coeffs):
        j = (4 - i) % 4
        out[j] = F.frobenius(c, j)
    return QPoly(tuple(out))


def graph(F: FieldSpec, f: QPoly) -> set[tuple[Felt, Felt]]:
    """All vectors (x, f(x)) of U_f."""
    xs = np.arange(F.order)
    return set(zip(xs.tolist(), veval_qpoly(F, f, xs).tolist()))


@dataclass
class LinearSet:
    """Point -> weight map of L_U for a rank-4 GF(q)-subspace U."""

    q: int
    weights: dict[int, int] = field(default_factory=dict)
    b: Felt | None = None

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def points(self) -> list[int]:
        return sorted(self.weights)

    def spectrum(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.weights.values():
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))

    def points_of_weight(self, w: int) -> list[int]:
        return sorted(P for P, wt in self.weights.items() if wt == w)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "b": self.b,
            "size": self.size,
            "spectrum": {str(w): n for w, n in self.spectrum().items()},
            "points": [[P, self.weights[P]] for P in self.points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "LinearSet":
        return cls(q=d["q"], weights={int(P): int(w) for P, w in d["points"]}, b=d.get("b"))


def _weight_from_multiplicity(q: int, m: int) -> int:
    w, qw = 0, 1
    while qw - 1 < m:
        qw *= q
        w += 1
    if qw - 1 != m:
        raise AssertionError(f"multiplicity {m} is not of the form q^w - 1")
    return w


def linear_set_from_vectors(F: FieldSpec, vectors: Iterable[tuple[Felt, Felt]]) -> LinearSet:
    """Weights from multiplicities: a point of weight w carries q^w - 1 nonzero vectors."""
    counts: dict[int, int] = {}
    for x, y in vectors:
        if x == 0 and y == 0:
            continue
        P = point_code(F, x, y)
        counts[P] = counts.get(P, 0) + 1
    return LinearSet(F.q, {P: _weight_from_multiplicity(F.q, m) for P, m in sorted(counts.items())})


def point_codes_of_graph(F: FieldSpec, f: QPoly) -> np.ndarray:
    """Point code of <(x, f(x))> for every nonzero x, in order of x."""
    xs = np.arange(1, F.order)
    return F.vdiv(veval_qpoly(F, f, xs), xs)


def linear_set_of(F: FieldSpec, f: QPoly) -> LinearSet:
    codes, counts = np.unique(point_codes_of_graph(F, f), return_counts=True)
    weights = {int(P): _weight_from_multiplicity(F.q, int(m)) for P, m in zip(codes, counts)}
    return LinearSet(F.q, weights)


def linear_set_of_b(F: FieldSpec, b: Felt) -> LinearSet:
    L = linear_set_of(F, build_U(F, b))
    L.b = b
    return L


def weight_spectrum(F: FieldSpec, f: QPoly) -> dict[int, int]:
    return linear_set_of(F, f).spectrum()


def is_scattered(F: FieldSpec, f: QPoly) -> bool:
    return linear_set_of(F, f).size == (F.order - 1) // (F.q - 1)


def point_set(F: FieldSpec, f: QPoly) -> frozenset[int]:
    return frozenset(np.unique(point_codes_of_graph(F, f)).tolist())


def kernel_of_fb(F: FieldSpec, b: Felt) -> set[Felt]:
    xs = np.arange(F.order)
    vals = veval_qpoly(F, build_U(F, b), xs)
    return set(xs[vals == 0].tolist())


def kernel_generator(F: FieldSpec, b: Felt) -> Felt | None:
    """(eps w)^(q^3) with b = w^(q^2-1), eps^(q^2) + eps = 0, eps != 0.

    Defined only when N_{q^4/q^2}(b) = 1; the kernel of f_b is then the
    GF(q^2)-span of the returned element.
    """
    if b == 0 or F.norm(b, 2) != 1:
        return None
    w = F.solve_power_root(b, F.q2 - 1)
    eps = F.solve_power_root(F.minus_one, F.q2 - 1)
    assert F.add(F.frobenius(eps, 2), eps) == 0
    return F.frobenius(F.mul(eps, w), 3)


def gf_q2_span(F: FieldSpec, x: Felt) -> set[Felt]:
    return {F.mul(mu, x) for mu in F.subfield(2)}


def max_field_of_linearity(F: FieldSpec, f: QPoly) -> int:
    """Largest s | 4 with U_f closed under multiplication by GF(q^s)."""
    xs = np.arange(F.order)
    fx = veval_qpoly(F, f, xs)
    for s in (4, 2):
        lam = F.exp(F.N // (F.q**s - 1))  # generates GF(q^s)*
        if np.array_equal(veval_qpoly(F, f, F.vmul(lam, xs)), F.vmul(lam, fx)):
            return s
    return 1
