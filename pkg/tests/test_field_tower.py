import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL, field
from linset.errors import BadElementCode, InversionOfZero, ZeroInput
from linset.field_tower import (
    PRIMITIVE_POLYNOMIALS,
    FieldSpec,
    field_from_config,
    find_primitive_polynomial,
    is_primitive,
)

ALL_FIELDS = SMALL + [(7, 1), (2, 3), (3, 2)]


def schoolbook_mul(F, a, b):
    """Digit-vector product reduced by the modulus, no tables."""
    x, y = F.to_coeffs(a), F.to_coeffs(b)
    prod = [0] * (2 * F.n - 1)
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            prod[i + j] = (prod[i + j] + u * v) % F.p
    mod = F.modulus
    for d in range(len(prod) - 1, F.n - 1, -1):
        t = prod[d]
        if t:
            for i in range(F.n + 1):
                prod[d - F.n + i] = (prod[d - F.n + i] - t * mod[i]) % F.p
    return F.from_coeffs(prod[: F.n])


def elems(F):
    return st.integers(0, F.order - 1)


def fields():
    return st.sampled_from(ALL_FIELDS).map(lambda pe: field(*pe))


@st.composite
def field_and_elems(draw, k=2):
    F = draw(fields())
    return (F, *[draw(elems(F)) for _ in range(k)])


# -- examples in GF(16) -----------------------------------------------------


def test_gf16_generator(F16):
    assert F16.modulus == (1, 1, 0, 0, 1)
    assert F16.g == 2
    assert F16.mul(2, F16.exp(3)) == 3
    assert F16.inv(2) == F16.exp(14)
    assert F16.frobenius(2, 3) == 5
    assert F16.norm(2, 1) == 1
    assert F16.norm(2, 2) == 6
    assert F16.trace(1) == 0
    assert F16.trace(2) == 0


def test_gf16_roots_and_subfields(F16):
    g = F16.exp
    assert F16.solve_power_root(1, 7) is not None
    assert F16.pow(F16.solve_power_root(g(6), 3), 3) == g(6)
    assert F16.solve_power_root(g(5), 3) is None
    assert F16.in_subfield(0, 2)
    assert F16.in_subfield(g(5), 2)
    assert not F16.in_subfield(2, 2)
    assert F16.subfield(2) == sorted([0, 1, g(5), g(10)])


def test_gf81_trace_of_one(F81):
    assert F81.trace(1) == 1


def test_add_identity_and_zero_inverse(F16):
    assert all(F16.add(a, 0) == a for a in F16.elements())
    with pytest.raises(InversionOfZero):
        F16.inv(0)
    with pytest.raises(BadElementCode):
        F16.check(16)


@pytest.mark.parametrize("pe", ALL_FIELDS)
def test_tables_match_schoolbook(pe):
    F = field(*pe)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, F.order, size=(300, 2)).tolist():
        assert F.mul(a, b) == schoolbook_mul(F, a, b)
        assert F.add(a, b) == F.add_digits(a, b)


@pytest.mark.parametrize("pe", ALL_FIELDS)
def test_generator_is_primitive(pe):
    F = field(*pe)
    seen = {F.exp(i) for i in range(F.N)}
    assert len(seen) == F.N and 0 not in seen


def test_stored_polynomials_are_first_primitive():
    for (p, n), mod in PRIMITIVE_POLYNOMIALS.items():
        if p**n <= 5**4:
            assert is_primitive(p, mod)
            assert find_primitive_polynomial(p, n) == mod


def test_field_config():
    F = field_from_config(2, 1, "1,1,0,0,1")
    assert F == field(2)
    with pytest.raises(ValueError):
        field_from_config(4, 1, None)
    with pytest.raises(ValueError):
        field_from_config(2, 1, "1,0,0,0,1")  # x^4 + 1 is reducible
    assert FieldSpec(2).q == 2 and FieldSpec(3, 2).q == 9


# -- properties ---------------------------------------------------------------


@given(field_and_elems(3))
def test_ring_axioms(t):
    F, a, b, c = t
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elems(2), st.integers(0, 12))
def test_frobenius_is_automorphism(t, i):
    F, a, b = t
    assert F.frobenius(F.mul(a, b), i) == F.mul(F.frobenius(a, i), F.frobenius(b, i))
    assert F.frobenius(F.add(a, b), i) == F.add(F.frobenius(a, i), F.frobenius(b, i))
    assert F.frobenius(a, 4) == a


@given(field_and_elems(2))
def test_norm_multiplicative_and_transitive(t):
    F, a, b = t
    for s in (1, 2):
        assert F.norm(F.mul(a, b), s) == F.mul(F.norm(a, s), F.norm(b, s))
        assert F.in_subfield(F.norm(a, s), s)
    # N_{q^4/q} = N_{q^2/q} o N_{q^4/q^2}
    n2 = F.norm(a, 2)
    assert F.norm(a, 1) == F.pow(n2, F.q + 1)


@pytest.mark.parametrize("pe", SMALL)
def test_trace_fibres(pe):
    F = field(*pe)
    xs = np.arange(F.order)
    tr = F.vadd(F.vadd(xs, F.vfrobenius(xs, 1)), F.vadd(F.vfrobenius(xs, 2), F.vfrobenius(xs, 3)))
    assert all(F.trace(int(x)) == int(t) for x, t in zip(xs[:50], tr[:50]))
    values, counts = np.unique(tr, return_counts=True)
    assert sorted(values.tolist()) == F.subfield(1)
    assert set(counts.tolist()) == {F.q**3}


@given(field_and_elems(1), st.integers(1, 200))
def test_power_root_criterion(t, d):
    F, b = t
    if b == 0:
        with pytest.raises(ZeroInput):
            F.solve_power_root(b, d)
        return
    r = F.solve_power_root(b, d)
    solvable = (F.N // math.gcd(d, F.N)) % F.order_of(b) == 0
    assert (r is not None) == solvable
    if r is not None:
        assert F.pow(r, d) == b


@given(field_and_elems(1))
def test_subfield_membership(t):
    F, a = t
    for s in (1, 2, 4):
        assert F.in_subfield(a, s) == (F.pow(a, F.q**s) == a)


@pytest.mark.parametrize("pe", ALL_FIELDS)
def test_vector_ops_match_scalar(pe):
    F = field(*pe)
    rng = np.random.default_rng(2)
    a = rng.integers(0, F.order, 200)
    b = rng.integers(1, F.order, 200)
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vdiv(a, b).tolist() == [F.div(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vpow(a, 7).tolist() == [F.pow(int(x), 7) for x in a]
    assert F.vfrobenius(a, 3).tolist() == [F.frobenius(int(x), 3) for x in a]
    assert F.vneg(a).tolist() == [F.neg(int(x)) for x in a]
