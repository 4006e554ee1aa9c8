"""Exact arithmetic in GF(p^k).

Elements are stored as their index in the field's canonical order: 0 first,
1 second, then the remaining residues sorted lexicographically by coefficient
tuple (highest degree first).  For a prime field the index is the integer
residue itself.  All arithmetic goes through precomputed q x q tables.
"""

from __future__ import annotations

import functools
import itertools

from .errors import DivisionByZero, FieldTooLarge, MixedFields, NotAPrimePower

MAX_ORDER = 64


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise NotAPrimePower."""
    if not isinstance(q, int) or q < 2:
        raise NotAPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotAPrimePower(f"{q} has at least two distinct prime factors")
    return p, k


# -- polynomials over F_p as coefficient lists, low degree first ------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(poly)
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _polymod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (high-first)."""
    for high_first in itertools.product(range(p), repeat=k):
        cand = list(reversed(high_first)) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldSpec:
    """The finite field with q = p**k elements.

    Instances are cached per q, so two specs for the same order are the same
    object and identity comparison is enough to detect mixed fields.
    """

    def __init__(self, q: int):
        p, k = factor_prime_power(q)
        if q > MAX_ORDER:
            raise FieldTooLarge(f"q={q} exceeds the implementation bound {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q
        self.modulus = smallest_irreducible(p, k) if k > 1 else None

        residues = list(itertools.product(range(p), repeat=k))  # low-first tuples
        zero = (0,) * k
        one = (1,) + (0,) * (k - 1)
        rest = sorted((r for r in residues if r not in (zero, one)),
                      key=lambda r: tuple(reversed(r)))
        self.reps = [zero, one] + rest
        index = {r: i for i, r in enumerate(self.reps)}

        def mul_rep(a, b):
            if k == 1:
                return ((a[0] * b[0]) % p,)
            prod = _polymod(_polymul(list(a), list(b), p), self.modulus, p)
            prod += [0] * (k - len(prod))
            return tuple(prod)

        self.add_t = [[index[tuple((x + y) % p for x, y in zip(a, b))] for b in self.reps]
                      for a in self.reps]
        self.mul_t = [[index[mul_rep(a, b)] for b in self.reps] for a in self.reps]
        self.neg_t = [index[tuple((-x) % p for x in a)] for a in self.reps]
        self.inv_t = [None] * q
        for a in range(1, q):
            self.inv_t[a] = self.mul_t[a].index(1)
        # pow_t[a][e] for 0 <= e < q; larger exponents are folded by pow_code
        self.pow_t = []
        for a in range(q):
            row = [1]
            for _ in range(q - 1):
                row.append(self.mul_t[row[-1]][a])
            self.pow_t.append(row)

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_make, (self.q,))

    def __call__(self, value) -> "FieldElement":
        """Element with the given canonical index (an int), or pass-through."""
        if isinstance(value, FieldElement):
            if value.spec is not self:
                raise MixedFields(f"{value!r} is not in {self!r}")
            return value
        if not 0 <= value < self.q:
            raise ValueError(f"index {value} out of range for {self!r}")
        return FieldElement(self, value)

    def from_int(self, n: int) -> "FieldElement":
        """Image of the integer n under Z -> F_q."""
        n %= self.p
        return FieldElement(self, 0 if n == 0 else 1 if n == 1 else
                            self.reps.index((n,) + (0,) * (self.k - 1)))

    def from_rep(self, rep) -> "FieldElement":
        return FieldElement(self, self.reps.index(tuple(rep)))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            if a == 0:
                raise DivisionByZero("0 has no inverse")
            a, e = self.inv_t[a], -e
        if e < self.q:
            return self.pow_t[a][e]
        if a == 0:
            return 0
        return self.pow_t[a][(e - 1) % (self.q - 1) + 1]

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def units(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(1, self.q)]


@functools.lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """The (cached) field of order q."""
    return FieldSpec(q)


class FieldElement:
    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def rep(self) -> tuple[int, ...]:
        """Coefficient tuple over Z_p, low degree first."""
        return self.spec.reps[self.code]

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec:
                raise MixedFields(f"{self.spec!r} vs {other.spec!r}")
            return other.code
        if isinstance(other, int):
            return self.spec.from_int(other).code
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add_t[self.code][o])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_t[self.code])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add_t[self.code][self.spec.neg_t[o]])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_t[self.code][o])

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise DivisionByZero(f"0 has no inverse in {self.spec!r}")
        return FieldElement(self.spec, self.spec.inv_t[self.code])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.spec, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_code(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec is other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == self.spec.from_int(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.q, self.code))

    def __lt__(self, other):
        return self.code < self._other(other)

    def __le__(self, other):
        return self.code <= self._other(other)

    def __gt__(self, other):
        return self.code > self._other(other)

    def __ge__(self, other):
        return self.code >= self._other(other)

    def __bool__(self):
        return self.code != 0

    def multiplicative_order(self) -> int:
        if self.code == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n, x = 1, self.code
        while x != 1:
            x = self.spec.mul_t[x][self.code]
            n += 1
        return n

    def __str__(self):
        if self.spec.k == 1:
            return str(self.code)
        parts = []
        for deg in range(self.spec.k - 1, -1, -1):
            c = self.rep[deg]
            if not c:
                continue
            mono = "" if deg == 0 else "t" if deg == 1 else f"t^{deg}"
            parts.append(str(c) if not mono else mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) or "0"

    def __repr__(self):
        return f"{self}@{self.spec!r}"


# functional aliases

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in canonical order (0, 1, then the rest)."""
    return spec.elements()


def primitive_element(spec: FieldSpec) -> FieldElement:
    """First element in canonical order generating the multiplicative group."""
    if spec.q == 2:
        return spec.one
    return next(a for a in spec.units() if a.multiplicative_order() == spec.q - 1)
