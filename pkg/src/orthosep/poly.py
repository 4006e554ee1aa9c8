"""Sparse polynomials over F_q in x_1..x_m, y_1..y_m.

Exponent tuples have length 2m and list the x-exponents first, then the
y-exponents.  Exponents are never reduced modulo x^q - x: a polynomial is a
formal object and its degree matters.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import DimensionMismatch, MixedArity, MixedFields
from .gf import FieldElement, FieldSpec


class Poly:
    __slots__ = ("m", "spec", "_terms", "_hash")

    def __init__(self, m: int, spec: FieldSpec, terms: Mapping[tuple, int] | None = None):
        self.m = m
        self.spec = spec
        clean = {}
        for exps, c in (terms or {}).items():
            if isinstance(c, FieldElement):
                c = c.code
            if c:
                if len(exps) != 2 * m:
                    raise DimensionMismatch(f"exponent tuple {exps} for m={m}")
                clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m, spec):
        return cls(m, spec)

    @classmethod
    def const(cls, m, spec, c):
        return cls(m, spec, {(0,) * (2 * m): spec(c) if isinstance(c, int) else c})

    @classmethod
    def monomial(cls, m, spec, exps, coeff=1):
        return cls(m, spec, {tuple(exps): coeff})

    @classmethod
    def var(cls, m, spec, name: str, i: int):
        """The coordinate function x_i or y_i (1-based i)."""
        if not 1 <= i <= m:
            raise DimensionMismatch(f"variable index {i} outside 1..{m}")
        exps = [0] * (2 * m)
        exps[(i - 1) if name == "x" else (m + i - 1)] = 1
        return cls(m, spec, {tuple(exps): 1})

    # -- basic protocol -----------------------------------------------------

    @property
    def terms(self) -> dict[tuple, FieldElement]:
        return {e: FieldElement(self.spec, c) for e, c in self._terms.items()}

    def coeff_codes(self) -> dict[tuple, int]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.spec is other.spec and self.m == other.m
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec.q, self.m, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Poly"):
        if other.spec is not self.spec:
            raise MixedFields(f"{self.spec!r} vs {other.spec!r}")
        if other.m != self.m:
            raise MixedArity(f"m={self.m} vs m={other.m}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        add_t = self.spec.add_t
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = add_t[out.get(e, 0)][c]
        return Poly(self.m, self.spec, out)

    def __neg__(self) -> "Poly":
        neg_t = self.spec.neg_t
        return Poly(self.m, self.spec, {e: neg_t[c] for e, c in self._terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = self.spec(c).code if isinstance(c, FieldElement) else self.spec.from_int(c).code
        row = self.spec.mul_t[c]
        return Poly(self.m, self.spec, {e: row[v] for e, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check(other)
        add_t, mul_t = self.spec.add_t, self.spec.mul_t
        out: dict[tuple, int] = {}
        for e1, c1 in self._terms.items():
            row = mul_t[c1]
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = add_t[out.get(e, 0)][row[c2]]
        return Poly(self.m, self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.m, self.spec, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and substitution ----------------------------------------

    def evaluator(self):
        """Return a fast function of the flat code tuple (x_1..x_m, y_1..y_m)."""
        spec = self.spec
        add_t, mul_t, pow_code = spec.add_t, spec.mul_t, spec.pow_code
        compiled = [(c, [(i, k) for i, k in enumerate(e) if k]) for e, c in self._terms.items()]

        def ev(point):
            acc = 0
            for c, factors in compiled:
                t = c
                for i, k in factors:
                    t = mul_t[t][pow_code(point[i], k)]
                    if not t:
                        break
                acc = add_t[acc][t]
            return acc

        return ev

    def __call__(self, point) -> FieldElement:
        return p_eval(self, point)

    def linear_substitute(self, L) -> "Poly":
        """Replace variable j by sum_k L[j][k] z_k, z = (x_1..x_m, y_1..y_m)."""
        n = 2 * self.m
        if len(L) != n or any(len(row) != n for row in L):
            raise DimensionMismatch(f"substitution matrix must be {n}x{n}")
        images = []
        for j in range(n):
            lin = {}
            for k in range(n):
                c = L[j][k]
                c = self.spec(c).code if isinstance(c, FieldElement) else c
                if c:
                    e = [0] * n
                    e[k] = 1
                    lin[tuple(e)] = c
            images.append(Poly(self.m, self.spec, lin))
        powers: dict[tuple[int, int], Poly] = {}
        one = Poly.const(self.m, self.spec, 1)
        out = Poly.zero(self.m, self.spec)
        for e, c in self._terms.items():
            term = one.scale(FieldElement(self.spec, c))
            for j, k in enumerate(e):
                if k:
                    if (j, k) not in powers:
                        powers[(j, k)] = images[j] ** k
                    term = term * powers[(j, k)]
            out = out + term
        return out

    def reindex(self, slots: Iterable[int], m_new: int) -> "Poly":
        """Move slot i (0-based) to slots[i] in an arity-m_new ring."""
        slots = list(slots)
        if len(slots) != self.m:
            raise DimensionMismatch("slot map must cover every slot")
        out = {}
        for e, c in self._terms.items():
            ne = [0] * (2 * m_new)
            for i, s in enumerate(slots):
                ne[s] = e[i]
                ne[m_new + s] = e[self.m + i]
            out[tuple(ne)] = c
        return Poly(m_new, self.spec, out)

    # -- text form ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)!r}, m={self.m}, {self.spec!r})"


def p_add(f: Poly, g: Poly) -> Poly:
    return f + g


def p_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def p_scale(f: Poly, c) -> Poly:
    return f.scale(c)


def p_eval(f: Poly, point) -> FieldElement:
    """Evaluate at a PointTuple or a flat sequence (x_1..x_m, y_1..y_m)."""
    if hasattr(point, "flat_codes"):
        if point.m != f.m:
            raise MixedArity(f"poly has m={f.m}, point has m={point.m}")
        if point.spec is not f.spec:
            raise MixedFields(f"{f.spec!r} vs {point.spec!r}")
        flat = point.flat_codes()
    else:
        if len(point) != 2 * f.m:
            raise MixedArity(f"expected {2 * f.m} coordinates, got {len(point)}")
        flat = [f.spec(v).code if isinstance(v, FieldElement) else v for v in point]
    return FieldElement(f.spec, f.evaluator()(flat))


def p_linear_substitute(f: Poly, L) -> Poly:
    return f.linear_substitute(L)


def render(f: Poly) -> str:
    if f.is_zero():
        return "0"
    m = f.m
    names = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)]
    parts = []
    for e, c in f.sorted_terms():
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xy])(?P<idx>\d+)|(?P<op>[-+*^]))")


def parse_poly(text: str, m: int, spec: FieldSpec) -> Poly:
    """Parse the rendered grammar back into a Poly.

    Coefficients are canonical-order indices; for prime fields these are the
    integer residues, so any integer is accepted there and reduced mod p.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        tokens.append(mt)
        pos = mt.end()

    out = Poly.zero(m, spec)
    sign = 1
    term = None
    i = 0

    def coeff(n: int):
        if spec.k == 1:
            return spec.from_int(n)
        return spec(n)

    while i < len(tokens):
        t = tokens[i]
        if t["op"] in ("+", "-"):
            if term is not None:
                out = out + (term if sign > 0 else -term)
                term = None
            sign = 1 if t["op"] == "+" else -1
            i += 1
            continue
        if t["op"] == "*":
            i += 1
            continue
        if t["num"] is not None:
            factor = Poly.const(m, spec, coeff(int(t["num"])))
        elif t["var"] is not None:
            factor = Poly.var(m, spec, t["var"], int(t["idx"]))
        else:
            raise ValueError(f"unexpected {t['op']!r} in {text!r}")
        i += 1
        if i < len(tokens) and tokens[i]["op"] == "^":
            if i + 1 >= len(tokens) or tokens[i + 1]["num"] is None:
                raise ValueError(f"missing exponent in {text!r}")
            factor = factor ** int(tokens[i + 1]["num"])
            i += 2
        term = factor if term is None else term * factor
    if term is not None:
        out = out + (term if sign > 0 else -term)
    return out
