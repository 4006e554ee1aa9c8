"""The group O_2^+(F_q) = {sigma_a, tau_a : a != 0} and its actions.

    tau_a   = [[a, 0], [0, 1/a]]
    sigma_a = [[0, a], [1/a, 0]]

The group acts on V = F_q^2 by matrix multiplication, diagonally on V^m,
and on polynomials by (g.f)(v) = f(g^{-1} v).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MixedArity, MixedFields, ZeroAlpha
from .gf import FieldElement, FieldSpec
from .poly import Poly

SIGMA = "sigma"
TAU = "tau"


@dataclass(frozen=True, order=True)
class Vector2:
    c1: FieldElement
    c2: FieldElement

    @property
    def spec(self) -> FieldSpec:
        return self.c1.spec

    def is_zero(self) -> bool:
        return not self.c1 and not self.c2

    def codes(self) -> tuple[int, int]:
        return (self.c1.code, self.c2.code)

    def __str__(self):
        return f"({self.c1},{self.c2})"


def vec(spec: FieldSpec, a, b) -> Vector2:
    """Vector from canonical indices (ints) or field elements."""
    return Vector2(spec(a), spec(b))


@dataclass(frozen=True, order=True)
class PointTuple:
    entries: tuple[Vector2, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise MixedArity("a point tuple needs at least one slot")
        spec = self.entries[0].spec
        if any(v.c1.spec is not spec or v.c2.spec is not spec for v in self.entries):
            raise MixedFields("all slots of a point tuple must share one field")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def spec(self) -> FieldSpec:
        return self.entries[0].spec

    def __getitem__(self, i) -> Vector2:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def flat_codes(self) -> tuple[int, ...]:
        """Coordinates in variable order (x_1..x_m, y_1..y_m)."""
        return tuple(v.c1.code for v in self.entries) + tuple(v.c2.code for v in self.entries)

    def pair_codes(self) -> tuple[tuple[int, int], ...]:
        return tuple(v.codes() for v in self.entries)

    @classmethod
    def from_codes(cls, spec: FieldSpec, pairs: Sequence[tuple[int, int]]) -> "PointTuple":
        return cls(tuple(Vector2(FieldElement(spec, a), FieldElement(spec, b)) for a, b in pairs))

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.entries) + ")"


def point(spec: FieldSpec, *pairs) -> PointTuple:
    """Shorthand: point(F, (1, 0), (0, 1))."""
    return PointTuple(tuple(vec(spec, a, b) for a, b in pairs))


@dataclass(frozen=True, order=True)
class GroupElement:
    kind: str
    alpha: FieldElement

    def __post_init__(self):
        if self.kind not in (SIGMA, TAU):
            raise ValueError(f"unknown group element kind {self.kind!r}")
        if not self.alpha:
            raise ZeroAlpha("group elements need a nonzero parameter")

    @property
    def spec(self) -> FieldSpec:
        return self.alpha.spec

    def matrix(self) -> tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]:
        a, z = self.alpha, self.spec.zero
        if self.kind == TAU:
            return ((a, z), (z, a.inverse()))
        return ((z, a), (a.inverse(), z))

    @classmethod
    def from_matrix(cls, mat) -> "GroupElement":
        (a, b), (c, d) = mat
        if not b and not c and a * d == 1:
            return cls(TAU, a)
        if not a and not d and b * c == 1:
            return cls(SIGMA, b)
        raise ValueError("matrix is not in O_2^+")

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self o other, as a matrix product."""
        if other.spec is not self.spec:
            raise MixedFields(f"{self.spec!r} vs {other.spec!r}")
        (a, b), (c, d) = self.matrix()
        (e, f), (g, h) = other.matrix()
        return GroupElement.from_matrix(((a * e + b * g, a * f + b * h),
                                         (c * e + d * g, c * f + d * h)))

    __mul__ = compose

    def inverse(self) -> "GroupElement":
        if self.kind == TAU:
            return GroupElement(TAU, self.alpha.inverse())
        return self

    def is_identity(self) -> bool:
        return self.kind == TAU and self.alpha == 1

    def act_codes(self, pairs):
        """Fast path: act on a sequence of (c1, c2) code pairs."""
        spec = self.spec
        mul_t = spec.mul_t
        a = self.alpha.code
        ai = spec.inv_t[a]
        ra, rai = mul_t[a], mul_t[ai]
        if self.kind == TAU:
            return tuple((ra[u], rai[v]) for u, v in pairs)
        return tuple((ra[v], rai[u]) for u, v in pairs)

    def act_vec(self, v: Vector2) -> Vector2:
        if v.spec is not self.spec:
            raise MixedFields(f"{self.spec!r} vs {v.spec!r}")
        ((u, w),) = self.act_codes([v.codes()])
        return Vector2(FieldElement(self.spec, u), FieldElement(self.spec, w))

    def act_tuple(self, pt: PointTuple) -> PointTuple:
        if pt.spec is not self.spec:
            raise MixedFields(f"{self.spec!r} vs {pt.spec!r}")
        return PointTuple.from_codes(self.spec, self.act_codes(pt.pair_codes()))

    def act(self, x):
        if isinstance(x, Vector2):
            return self.act_vec(x)
        if isinstance(x, PointTuple):
            return self.act_tuple(x)
        if isinstance(x, Poly):
            return self.act_poly(x)
        raise TypeError(f"cannot act on {type(x).__name__}")

    def substitution_matrix(self, m: int):
        """2m x 2m block matrix of g^{-1}, in variable order x_1..x_m, y_1..y_m."""
        (a, b), (c, d) = self.inverse().matrix()
        z = self.spec.zero
        L = [[z] * (2 * m) for _ in range(2 * m)]
        for i in range(m):
            L[i][i], L[i][m + i] = a, b
            L[m + i][i], L[m + i][m + i] = c, d
        return L

    def act_poly(self, f: Poly) -> Poly:
        if f.spec is not self.spec:
            raise MixedFields(f"{self.spec!r} vs {f.spec!r}")
        return f.linear_substitute(self.substitution_matrix(f.m))

    def __str__(self):
        return f"{self.kind}({self.alpha})"


def sigma(spec: FieldSpec, a) -> GroupElement:
    return GroupElement(SIGMA, spec(a))


def tau(spec: FieldSpec, a) -> GroupElement:
    return GroupElement(TAU, spec(a))


def identity(spec: FieldSpec) -> GroupElement:
    return GroupElement(TAU, spec.one)


def g_compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.compose(h)


def g_inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def g_act_vec(g: GroupElement, v: Vector2) -> Vector2:
    return g.act_vec(v)


def g_act_tuple(g: GroupElement, pt: PointTuple) -> PointTuple:
    return g.act_tuple(pt)


def g_act_poly(g: GroupElement, f: Poly) -> Poly:
    return g.act_poly(f)


def all_elements(spec: FieldSpec) -> list[GroupElement]:
    """All 2(q-1) elements: the taus first, then the sigmas."""
    return ([GroupElement(TAU, a) for a in spec.units()]
            + [GroupElement(SIGMA, a) for a in spec.units()])


def generators(spec: FieldSpec, gamma: FieldElement | None = None) -> list[GroupElement]:
    """sigma_1 together with tau_gamma for a primitive gamma."""
    from .gf import primitive_element
    gamma = primitive_element(spec) if gamma is None else gamma
    return [GroupElement(SIGMA, spec.one), GroupElement(TAU, gamma)]


def stabilizer(v: Vector2 | PointTuple) -> set[GroupElement]:
    """Brute-force stabilizer of a vector or a point tuple."""
    act = (lambda g: g.act_vec(v)) if isinstance(v, Vector2) else (lambda g: g.act_tuple(v))
    return {g for g in all_elements(v.spec) if act(g) == v}
