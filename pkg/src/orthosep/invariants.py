"""Invariant families N, U, B, D, T, H and the candidate sets built from them.

    N_i  = x_i y_i
    U_ij = x_i y_j + x_j y_i                  (i < j)
    B_a  = x^a + y^a                          (|a| = q - 1)
    D_IJ = x_I y_J + x_J y_I                  (I < J elementwise, |J|-|I| in {0, q-1})
    T_i  = x_i^(q-1) + y_i^(q-1)
    H_ij = x_i x_j^(q-2) + y_i y_j^(q-2)      (i < j)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .errors import ArityShrink, BadDescriptor, NonInvariantMember
from .gf import FieldSpec
from .group import all_elements
from .poly import Poly, render

FAMILIES = ("N", "U", "B", "D", "T", "H")


@dataclass(frozen=True)
class InvariantDescriptor:
    """Family tag plus indices (1-based).

    N, T: ``(i,)``.  U, H: ``(i, j)``.  B: the multi-index.  D: ``(I, J)``
    with I and J tuples of slot numbers.
    """

    family: str
    indices: tuple

    def __str__(self):
        f, ix = self.family, self.indices
        if f in ("N", "T"):
            return f"{f}_{ix[0]}"
        if f in ("U", "H"):
            return f"{f}_{ix[0]}{ix[1]}"
        if f == "B":
            return "B_(" + ",".join(map(str, ix)) + ")"
        I, J = ix
        return "D_{" + ",".join(map(str, I)) + "}{" + ",".join(map(str, J)) + "}"

    def validate(self, m: int, q: int) -> None:
        f, ix = self.family, self.indices
        if f not in FAMILIES:
            raise BadDescriptor(f"unknown family {f!r}")
        if f in ("N", "T"):
            if len(ix) != 1 or not 1 <= ix[0] <= m:
                raise BadDescriptor(f"{f} needs one index in 1..{m}, got {ix}")
        elif f in ("U", "H"):
            if len(ix) != 2 or not 1 <= ix[0] < ix[1] <= m:
                raise BadDescriptor(f"{f} needs indices 1 <= i < j <= {m}, got {ix}")
        elif f == "B":
            if len(ix) != m or any(a < 0 for a in ix):
                raise BadDescriptor(f"B needs a multi-index of length {m}, got {ix}")
            if sum(ix) != q - 1:
                raise BadDescriptor(f"B needs |i| = q-1 = {q - 1}, got {sum(ix)}")
        else:
            if len(ix) != 2:
                raise BadDescriptor("D needs a pair (I, J)")
            I, J = (tuple(s) for s in ix)
            if not I or not J:
                raise BadDescriptor("D needs nonempty I and J")
            for s in (I, J):
                if list(s) != sorted(set(s)) or not all(1 <= a <= m for a in s):
                    raise BadDescriptor(f"D index set {s} must be increasing within 1..{m}")
            if max(I) >= min(J):
                raise BadDescriptor(f"D needs i < j for all i in {I}, j in {J}")
            if len(J) - len(I) not in (0, q - 1):
                raise BadDescriptor(f"D needs |J|-|I| in {{0, {q - 1}}}, got {len(J) - len(I)}")

    def reindex(self, slots, m_new: int) -> "InvariantDescriptor":
        """Relabel slot k (1-based) as slots[k-1] (1-based) in arity m_new."""
        f, ix = self.family, self.indices
        if f == "B":
            out = [0] * m_new
            for k, a in enumerate(ix):
                out[slots[k] - 1] = a
            return InvariantDescriptor(f, tuple(out))
        if f == "D":
            I, J = ix
            return InvariantDescriptor(f, (tuple(slots[i - 1] for i in I),
                                           tuple(slots[j - 1] for j in J)))
        return InvariantDescriptor(f, tuple(slots[i - 1] for i in ix))


def N(i):
    return InvariantDescriptor("N", (i,))


def T(i):
    return InvariantDescriptor("T", (i,))


def U(i, j):
    return InvariantDescriptor("U", (i, j))


def H(i, j):
    return InvariantDescriptor("H", (i, j))


def B(*multi):
    return InvariantDescriptor("B", tuple(multi))


def D(I, J):
    return InvariantDescriptor("D", (tuple(I), tuple(J)))


def _x_plus_y(m, spec, xexp, yexp) -> Poly:
    return Poly(m, spec, {tuple(xexp) + (0,) * m: 1}) + Poly(m, spec, {(0,) * m + tuple(yexp): 1})


def make_invariant(d: InvariantDescriptor, m: int, spec: FieldSpec) -> Poly:
    d.validate(m, spec.q)
    q = spec.q
    f, ix = d.family, d.indices
    x = lambda i: Poly.var(m, spec, "x", i)
    y = lambda i: Poly.var(m, spec, "y", i)
    if f == "N":
        return x(ix[0]) * y(ix[0])
    if f == "U":
        i, j = ix
        return x(i) * y(j) + x(j) * y(i)
    if f == "T":
        e = [0] * m
        e[ix[0] - 1] = q - 1
        return _x_plus_y(m, spec, e, e)
    if f == "H":
        i, j = ix
        e = [0] * m
        e[i - 1] += 1
        e[j - 1] += q - 2
        return _x_plus_y(m, spec, e, e)
    if f == "B":
        return _x_plus_y(m, spec, ix, ix)
    I, J = ix
    eI = [1 if k + 1 in I else 0 for k in range(m)]
    eJ = [1 if k + 1 in J else 0 for k in range(m)]
    return Poly(m, spec, {tuple(eI) + tuple(eJ): 1}) + Poly(m, spec, {tuple(eJ) + tuple(eI): 1})


@dataclass(frozen=True)
class InvariantSet:
    name: str
    m: int
    spec: FieldSpec
    members: tuple = field(default=())  # of (InvariantDescriptor | str, Poly)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def polys(self) -> list[Poly]:
        return [p for _, p in self.members]

    @property
    def labels(self) -> list[str]:
        return [str(d) for d, _ in self.members]

    def subset(self, indices, name=None) -> "InvariantSet":
        return InvariantSet(name or self.name, self.m, self.spec,
                            tuple(self.members[i] for i in indices))

    def without(self, index: int) -> "InvariantSet":
        keep = [i for i in range(len(self)) if i != index]
        return self.subset(keep, f"{self.name} minus {self.labels[index]}")

    def poly_set(self) -> frozenset:
        return frozenset(self.polys)

    def check_invariant(self, group=None) -> None:
        """Raise NonInvariantMember unless every member is fixed by every g."""
        group = all_elements(self.spec) if group is None else group
        for d, f in self.members:
            for g in group:
                if g.act_poly(f) != f:
                    raise NonInvariantMember(g, f, str(d))

    def manifest(self) -> dict:
        return {
            "name": self.name,
            "q": self.spec.q,
            "m": self.m,
            "size": len(self),
            "members": [{"label": str(d), "poly": render(p)} for d, p in self.members],
        }


def build_set(name: str, descriptors, m: int, spec: FieldSpec) -> InvariantSet:
    """Materialize descriptors, dropping polynomials already present."""
    seen = set()
    members = []
    for d in descriptors:
        p = make_invariant(d, m, spec)
        if p not in seen:
            seen.add(p)
            members.append((d, p))
    return InvariantSet(name, m, spec, tuple(members))


def tm_descriptors(m: int, with_h: bool = True) -> list[InvariantDescriptor]:
    pairs = list(itertools.combinations(range(1, m + 1), 2))
    out = [N(i) for i in range(1, m + 1)] + [T(i) for i in range(1, m + 1)]
    out += [U(i, j) for i, j in pairs]
    if with_h:
        out += [H(i, j) for i, j in pairs]
    return out


def set_Tm(m: int, spec: FieldSpec) -> InvariantSet:
    """N_i, T_i, U_ij, H_ij.  At q = 2 each H_ij coincides with T_i and is dropped."""
    return build_set(f"T_{m}", tm_descriptors(m), m, spec)


def set_Tm2(m: int, spec: FieldSpec) -> InvariantSet:
    return build_set(f"T_{m}^(2)", tm_descriptors(m, with_h=False), m, spec)


def minimal_set(m: int, spec: FieldSpec) -> InvariantSet:
    """The minimal separating candidate: T_m^(2) for q = 2, T_m otherwise."""
    return set_Tm2(m, spec) if spec.q == 2 else set_Tm(m, spec)


def b_multi_indices(m: int, q: int) -> Iterator[tuple[int, ...]]:
    """All a in N^m with |a| = q - 1, lexicographically descending."""
    total = q - 1

    def rec(prefix, left, slots):
        if slots == 1:
            yield prefix + (left,)
            return
        for a in range(left, -1, -1):
            yield from rec(prefix + (a,), left - a, slots - 1)

    yield from rec((), total, m)


def d_descriptors(m: int, q: int) -> Iterator[InvariantDescriptor]:
    slots = range(1, m + 1)
    for ni in range(1, m + 1):
        for I in itertools.combinations(slots, ni):
            for nj in (ni, ni + q - 1):
                later = [j for j in slots if j > max(I)]
                for J in itertools.combinations(later, nj):
                    yield D(I, J)


def chen_descriptors(m: int, q: int) -> Iterator[InvariantDescriptor]:
    yield from (N(i) for i in range(1, m + 1))
    yield from (B(*a) for a in b_multi_indices(m, q))
    seen = set()
    for d in d_descriptors(m, q):
        if d not in seen:
            seen.add(d)
            yield d


def set_chen(m: int, spec: FieldSpec) -> InvariantSet:
    """N u B u D, deduplicated by polynomial equality."""
    return build_set(f"Chen_{m}", chen_descriptors(m, spec.q), m, spec)


def admissible_tuples(m0: int, m: int) -> Iterator[tuple[int, ...]]:
    """1 <= i_1 < ... < i_m0 <= m."""
    return itertools.combinations(range(1, m + 1), m0)


def expand_set(S: InvariantSet, m: int) -> InvariantSet:
    """Re-instantiate every member at every m-admissible index tuple."""
    if m < S.m:
        raise ArityShrink(f"cannot expand an arity-{S.m} set to m={m}")
    if m == S.m:
        return S
    seen = set()
    members = []
    for d, f in S.members:
        for slots in admissible_tuples(S.m, m):
            p = f.reindex([s - 1 for s in slots], m)
            if p in seen:
                continue
            seen.add(p)
            label = (d.reindex(slots, m) if isinstance(d, InvariantDescriptor)
                     else f"{d}{list(slots)}")
            members.append((label, p))
    return InvariantSet(f"{S.name}^[{m}]", m, S.spec, tuple(members))


def custom_set(name: str, lines, m: int, spec: FieldSpec) -> InvariantSet:
    """Set from polynomial text lines (blank lines and '#' comments skipped)."""
    from .poly import parse_poly
    members = []
    seen = set()
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        label = None
        if ":" in line:
            label, line = (s.strip() for s in line.split(":", 1))
        p = parse_poly(line, m, spec)
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        members.append((label or render(p), p))
    return InvariantSet(name, m, spec, tuple(members))
