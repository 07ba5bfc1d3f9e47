"""Exact arithmetic in GF(q^4), q = p^e, via log/antilog and Zech tables.

Elements are plain ints: the base-p packing ``sum(a_i * p**i)`` of the
coefficient vector of the residue polynomial in the generator ``g``.  The
modulus is primitive, so ``g`` (code ``p``) generates the multiplicative
group and every nonzero element has a discrete log.

Scalar methods work on Python ints; the ``v*`` methods are numpy-vectorized
counterparts used by the enumeration-heavy modules.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .errors import BadElementCode, InversionOfZero, ZeroInput

Felt = int

# Monic primitive polynomials of degree 4e over GF(p), ascending coefficients.
# Each is the lexicographically first primitive one (see
# find_primitive_polynomial); tests re-verify primitivity.
PRIMITIVE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 4): (1, 1, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 8): (2, 0, 0, 1, 0, 0, 0, 0, 1),
    (3, 12): (2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (5, 8): (3, 2, 1, 0, 0, 0, 0, 0, 1),
    (5, 12): (3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (7, 4): (5, 3, 1, 0, 1),
    (7, 8): (3, 1, 0, 0, 0, 0, 0, 0, 1),
    (7, 12): (3, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    n = len(mod) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # mod is monic: x^n = -sum(mod[k] x^k)
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for k in range(n):
                prod[d - n + k] = (prod[d - n + k] - c * mod[k]) % p
    return prod[:n]


def _xpow(e: int, mod: tuple[int, ...], p: int) -> list[int]:
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = [0, 1] + [0] * (n - 2) if n > 1 else [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def is_primitive(p: int, modulus: tuple[int, ...]) -> bool:
    """True iff the monic ``modulus`` makes x a generator of GF(p^n)*.

    If x has order p^n - 1 modulo f, the quotient ring has p^n - 1 units and
    is therefore a field, so irreducibility need not be checked separately.
    """
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1 or modulus[0] % p == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _xpow(order, modulus, p) != one:
        return False
    return all(_xpow(order // r, modulus, p) != one for r in prime_factors(order))


def find_primitive_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically first (by packed low coefficients) primitive polynomial."""
    for low in range(1, p**n):
        coeffs = [(low // p**i) % p for i in range(n)]
        cand = tuple(coeffs) + (1,)
        if is_primitive(p, cand):
            return cand
    raise ValueError(f"no primitive polynomial of degree {n} over GF({p})")


class FieldSpec:
    """The tower GF(p) < GF(q) < GF(q^2) < GF(q^4) with q = p^e.

    Immutable after construction.
    """

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError("e must be positive")
        n = 4 * e
        if modulus is None:
            modulus = PRIMITIVE_POLYNOMIALS.get((p, n)) or find_primitive_polynomial(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1:
            raise ValueError(f"modulus must have {n + 1} coefficients, got {len(modulus)}")
        if not is_primitive(p, modulus):
            raise ValueError(f"modulus {modulus} is not primitive over GF({p})")
        self.p = p
        self.e = e
        self.n = n
        self.modulus = modulus
        self.q = p**e
        self.q2 = self.q**2
        self.order = self.q**4  # |GF(q^4)|
        self.N = self.order - 1  # multiplicative group order
        self._subfields: dict[int, list[int]] = {}
        self._build_tables()

    def _build_tables(self) -> None:
        p, n, N = self.p, self.n, self.N
        exp = [0] * N
        log = [-1] * (N + 1)
        vec = [1] + [0] * (n - 1)
        for i in range(N):
            code = 0
            for k in range(n - 1, -1, -1):
                code = code * p + vec[k]
            exp[i] = code
            log[code] = i
            # multiply by x and reduce
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                vec = [(vec[k] - top * self.modulus[k]) % p for k in range(n)]
        if -1 in log[1:]:
            raise AssertionError("log table incomplete; modulus not primitive")
        zech = [-1] * N
        for d in range(N):
            s = self.add_digits(1, exp[d])
            zech[d] = log[s] if s else -1
        self._exp = exp
        self._log = log
        self._zech = zech
        self.exp_table = np.array(exp, dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)
        self.zech_table = np.array(zech, dtype=np.int64)
        self.g = exp[1]
        self.minus_one = exp[N // 2] if p != 2 else 1

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __reduce__(self):
        return (FieldSpec, (self.p, self.e, self.modulus))

    # -- codec -----------------------------------------------------------

    def to_coeffs(self, a: Felt) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.n)]

    def from_coeffs(self, coeffs) -> Felt:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + int(c) % self.p
        return code

    def add_digits(self, a: Felt, b: Felt) -> Felt:
        """Addition straight on base-p digits (table-free)."""
        if self.p == 2:
            return a ^ b
        p, out, place = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: Felt) -> Felt:
        if not 0 <= a < self.order:
            raise BadElementCode(f"code {a} out of range for GF({self.order})")
        return a

    # -- scalar arithmetic -------------------------------------------------

    def log(self, a: Felt) -> int:
        if a == 0:
            raise InversionOfZero("log of zero")
        return self._log[a]

    def exp(self, i: int) -> Felt:
        return self._exp[i % self.N]

    def add(self, a: Felt, b: Felt) -> Felt:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.N]
        return 0 if z < 0 else self._exp[(la + z) % self.N]

    def neg(self, a: Felt) -> Felt:
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + self.N // 2) % self.N]

    def sub(self, a: Felt, b: Felt) -> Felt:
        return self.add(a, self.neg(b))

    def mul(self, a: Felt, b: Felt) -> Felt:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.N]

    def inv(self, a: Felt) -> Felt:
        if a == 0:
            raise InversionOfZero("inverse of zero")
        return self._exp[(-self._log[a]) % self.N]

    def div(self, a: Felt, b: Felt) -> Felt:
        if b == 0:
            raise InversionOfZero("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self.N]

    def pow(self, a: Felt, k: int) -> Felt:
        if a == 0:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise InversionOfZero("negative power of zero")
        return self._exp[(self._log[a] * k) % self.N]

    def sum(self, items) -> Felt:
        s = 0
        for x in items:
            s = self.add(s, x)
        return s

    def frobenius(self, a: Felt, i: int = 1) -> Felt:
        """a^(q^i), i taken mod 4."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(self.q, i % 4, self.N)) % self.N]

    def norm(self, a: Felt, s: int) -> Felt:
        """N_{q^4/q^s}(a) = a^((q^4-1)/(q^s-1)) for s in {1, 2}."""
        if s not in (1, 2):
            raise ValueError("s must be 1 or 2")
        return self.pow(a, self.N // (self.q**s - 1))

    def trace(self, a: Felt) -> Felt:
        """Tr_{q^4/q}(a)."""
        return self.sum(self.frobenius(a, i) for i in range(4))

    def in_subfield(self, a: Felt, s: int) -> bool:
        if s not in (1, 2, 4):
            raise ValueError("s must divide 4")
        return self.frobenius(a, s) == a

    def subfield(self, s: int) -> list[Felt]:
        """Elements of GF(q^s), ascending codes."""
        if s not in self._subfields:
            xs = np.arange(self.order)
            self._subfields[s] = xs[self.vfrobenius(xs, s) == xs].tolist()
        return list(self._subfields[s])

    def solve_power_root(self, b: Felt, d: int) -> Felt | None:
        """Some w with w^d = b, or None if b is not a d-th power."""
        if b == 0:
            raise ZeroInput("power root of zero")
        N = self.N
        d %= N
        L = self._log[b]
        h = gcd(d, N)
        if L % h:
            return None
        m = ((L // h) * pow(d // h, -1, N // h)) % (N // h) if N // h > 1 else 0
        w = self._exp[m]
        assert self.pow(w, d) == b
        return w

    def order_of(self, a: Felt) -> int:
        if a == 0:
            raise InversionOfZero("order of zero")
        return self.N // gcd(self._log[a], self.N)

    # -- vectorized arithmetic --------------------------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        la = self.log_table[a]
        lb = self.log_table[b]
        z = self.zech_table[(lb - la) % self.N]
        out = np.where(z < 0, 0, self.exp_table[(la + z) % self.N])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        return np.where(a == 0, 0, self.exp_table[(self.log_table[a] + self.N // 2) % self.N])

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_table[(self.log_table[a] + self.log_table[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, out)

    def vdiv(self, a, b):
        """Elementwise a/b; entries with b == 0 come back as 0 (caller masks)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_table[(self.log_table[a] - self.log_table[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        out = self.exp_table[(self.log_table[a] * (k % self.N)) % self.N]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vfrobenius(self, a, i: int = 1):
        return self.vpow(a, pow(self.q, i % 4, self.N))


def field_from_config(p: int, e: int = 1, modulus: str | None = None) -> FieldSpec:
    """Build a field from CLI-style settings; ``modulus`` is comma-separated ascending."""
    coeffs = None
    if modulus:
        coeffs = tuple(int(c) for c in modulus.split(","))
    return FieldSpec(p, e, coeffs)
