"""Orbits of O_2^+(F_q) on V^m: canonical forms, enumeration, counting.

Every orbit has exactly one canonical element of one of four shapes, where
e_a denotes the vector (1, a):

    0:  (0, ..., 0)
    a:  (0^r, e_0, u_1, ..., u_t)
    b:  (0^r, e_a, b_1 e_a, ..., b_s e_a)                  a != 0
    c:  (0^r, e_a, b_1 e_a, ..., b_s e_a, w, u_1, ..., u_t) a != 0, w in Omega_a

Omega_a picks one vector from each pair {w, sigma_{1/a} w} of vectors off
the line F_q e_a.  We pick the lexicographically smaller one, comparing
coordinates in the field's canonical order.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass

from .errors import BudgetExceeded, MixedArity, NotInSAlpha, ZeroAlpha
from .gf import FieldElement, FieldSpec
from .group import (SIGMA, TAU, GroupElement, PointTuple, Vector2, all_elements)

DEFAULT_BUDGET = 20_000_000
ZERO, TYPE_A, TYPE_B, TYPE_C = "0", "a", "b", "c"


def default_budget() -> int:
    return int(os.environ.get("ORTHOSEP_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class CanonicalForm:
    point: PointTuple
    otype: str
    r: int | None = None        # number of leading zero slots
    alpha: FieldElement | None = None
    s: int | None = None        # number of multiples of e_alpha after e_alpha
    w_pos: int | None = None    # 0-based slot of w (type c)

    def describe(self) -> dict:
        out = {"point": [list(v.codes()) for v in self.point], "type": self.otype}
        if self.r is not None:
            out["r"] = self.r
        if self.alpha is not None:
            out["alpha"] = self.alpha.code
        if self.s is not None:
            out["s"] = self.s
        if self.w_pos is not None:
            out["w_pos"] = self.w_pos
        return out


# -- Omega_alpha ---------------------------------------------------------------

def _omega_codes(spec: FieldSpec, a: int, w: tuple[int, int]) -> bool:
    # sigma_{1/a} (b, c) = (c / a, a b)
    inv_a = spec.inv_t[a]
    partner = (spec.mul_t[inv_a][w[1]], spec.mul_t[a][w[0]])
    return w < partner


def in_line(spec: FieldSpec, a: int, w: tuple[int, int]) -> bool:
    """w in F_q e_a, i.e. a * w(1) == w(2)."""
    return spec.mul_t[a][w[0]] == w[1]


def omega_contains(alpha: FieldElement, w: Vector2) -> bool:
    """True iff w is the chosen representative of {w, sigma_{1/alpha} w}."""
    if not alpha:
        raise ZeroAlpha("Omega_alpha needs alpha != 0")
    spec = alpha.spec
    if in_line(spec, alpha.code, w.codes()):
        raise NotInSAlpha(f"{w} lies on the line through e_{alpha}")
    return _omega_codes(spec, alpha.code, w.codes())


def omega(alpha: FieldElement) -> list[Vector2]:
    """All of Omega_alpha, in lexicographic order."""
    spec = alpha.spec
    out = []
    for b, c in itertools.product(range(spec.q), repeat=2):
        if not in_line(spec, alpha.code, (b, c)) and _omega_codes(spec, alpha.code, (b, c)):
            out.append(Vector2(FieldElement(spec, b), FieldElement(spec, c)))
    return out


# -- canonical forms -------------------------------------------------------------

def _canonical_codes(spec: FieldSpec, pairs):
    """Core of canonicalize on code pairs.

    Returns (canonical pairs, witness as (kind, alpha code), shape fields).
    """
    m = len(pairs)
    k = next((i for i, v in enumerate(pairs) if v != (0, 0)), None)
    if k is None:
        return tuple(pairs), (TAU, 1), (ZERO, None, None, None, None)
    mul_t, inv_t = spec.mul_t, spec.inv_t

    b, c = pairs[k]
    if b == 0:
        # sigma_1 then tau_{1/c}: composite sigma_{1/c}
        g = (SIGMA, inv_t[c])
    else:
        g = (TAU, inv_t[b])
    pts = _act(spec, g, pairs)
    a = pts[k][1]
    if a == 0:
        return pts, g, (TYPE_A, k, None, None, None)

    j = k + 1
    while j < m and in_line(spec, a, pts[j]):
        j += 1
    s = j - k - 1
    if j == m:
        return pts, g, (TYPE_B, k, a, s, None)
    if not _omega_codes(spec, a, pts[j]):
        flip = (SIGMA, inv_t[a])
        pts = _act(spec, flip, pts)
        g = _compose(spec, flip, g)
    return pts, g, (TYPE_C, k, a, s, j)


def _act(spec, g, pairs):
    kind, a = g
    ra, rai = spec.mul_t[a], spec.mul_t[spec.inv_t[a]]
    if kind == TAU:
        return tuple((ra[u], rai[v]) for u, v in pairs)
    return tuple((ra[v], rai[u]) for u, v in pairs)


def _compose(spec, g, h):
    """g o h on (kind, alpha code) pairs."""
    (kg, a), (kh, b) = g, h
    mul_t, inv_t = spec.mul_t, spec.inv_t
    if kg == TAU and kh == TAU:
        return (TAU, mul_t[a][b])
    if kg == SIGMA and kh == SIGMA:
        return (TAU, mul_t[a][inv_t[b]])
    if kg == SIGMA:
        return (SIGMA, mul_t[a][inv_t[b]])
    return (SIGMA, mul_t[a][b])


def canonical_point_codes(spec: FieldSpec, pairs) -> tuple:
    return _canonical_codes(spec, tuple(pairs))[0]


def canonicalize(pt: PointTuple) -> tuple[CanonicalForm, GroupElement]:
    """Canonical element of the orbit of pt, and g with g . pt = canonical."""
    spec = pt.spec
    pts, (kind, a), (otype, r, alpha, s, w_pos) = _canonical_codes(spec, pt.pair_codes())
    form = CanonicalForm(PointTuple.from_codes(spec, pts), otype, r,
                         None if alpha is None else FieldElement(spec, alpha), s, w_pos)
    return form, GroupElement(kind, FieldElement(spec, a))


def is_canonical(pt: PointTuple) -> bool:
    return canonicalize(pt)[0].point == pt


def same_orbit(u: PointTuple, v: PointTuple) -> bool:
    """Direct check: some group element maps u to v."""
    if u.m != v.m:
        raise MixedArity(f"m={u.m} vs m={v.m}")
    return any(g.act_tuple(u) == v for g in all_elements(u.spec))


def orbit_codes(spec: FieldSpec, pairs) -> set:
    """The orbit of a code-pair tuple, by applying every group element."""
    return {g.act_codes(pairs) for g in all_elements(spec)}


def orbit_size(pt: PointTuple) -> int:
    return len(orbit_codes(pt.spec, pt.pair_codes()))


# -- enumeration ----------------------------------------------------------------

def _all_vectors(q):
    return list(itertools.product(range(q), repeat=2))


def _grammar_codes(spec: FieldSpec, m: int):
    q = spec.q
    vecs = _all_vectors(q)
    out = [((0, 0),) * m]
    for r in range(m):
        head = ((0, 0),) * r
        t = m - r - 1
        for tail in itertools.product(vecs, repeat=t):
            out.append(head + ((1, 0),) + tail)
        for a in range(1, q):
            line = [(b, spec.mul_t[a][b]) for b in range(q)]
            omega_a = [w for w in vecs if not in_line(spec, a, w) and _omega_codes(spec, a, w)]
            for s in range(m - r):
                mult = list(itertools.product(line, repeat=s))
                t = m - r - 1 - s - 1
                if t < 0:
                    out.extend(head + ((1, a),) + mu for mu in mult)
                    continue
                for mu in mult:
                    for w in omega_a:
                        for tail in itertools.product(vecs, repeat=t):
                            out.append(head + ((1, a),) + mu + (w,) + tail)
    return out


def _brute_codes(spec: FieldSpec, m: int, budget: int):
    total = spec.q ** (2 * m)
    if total > budget:
        raise BudgetExceeded(f"q^(2m) = {total} exceeds budget {budget}")
    counts = Counter()
    for pairs in itertools.product(_all_vectors(spec.q), repeat=m):
        counts[_canonical_codes(spec, pairs)[0]] += 1
    return counts


def orbit_reps_enumerate(m: int, spec: FieldSpec, strategy: str = "grammar",
                         budget: int | None = None) -> list[CanonicalForm]:
    """Canonical representatives of all orbits, sorted lexicographically.

    ``strategy="brute"`` canonicalizes every tuple of V^m; ``"grammar"``
    writes down the four shapes directly.
    """
    if strategy == "brute":
        reps = sorted(_brute_codes(spec, m, default_budget() if budget is None else budget))
    elif strategy == "grammar":
        reps = sorted(_grammar_codes(spec, m))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return [canonicalize(PointTuple.from_codes(spec, p))[0] for p in reps]


def orbit_partition(m: int, spec: FieldSpec, budget: int | None = None) -> Counter:
    """Canonical point codes -> orbit size, by brute force over V^m."""
    return _brute_codes(spec, m, default_budget() if budget is None else budget)


@dataclass(frozen=True)
class OrbitCount:
    kappa: int
    k1: int
    k2: int
    k3: int

    def as_dict(self):
        return {"kappa": self.kappa, "kappa1": self.k1, "kappa2": self.k2, "kappa3": self.k3}


def orbit_count_formula(m: int, q: int | FieldSpec) -> OrbitCount:
    """Closed-form orbit count with its split into shapes a, b, c."""
    if isinstance(q, FieldSpec):
        q = q.q
    if m < 1:
        raise ValueError("m must be positive")
    num, den = (q ** m + 1) * (q ** m + q - 2), 2 * (q - 1)
    assert num % den == 0
    kappa = num // den
    k1 = (q ** (2 * m) - 1) // (q * q - 1)
    k2 = q ** m - 1
    num3, den3 = q * (q ** m - 1) * (q ** (m - 1) - 1), 2 * (q + 1)
    assert num3 % den3 == 0
    k3 = num3 // den3
    assert 1 + k1 + k2 + k3 == kappa, (q, m)
    return OrbitCount(kappa, k1, k2, k3)


def type_breakdown(reps) -> dict[str, int]:
    c = Counter(r.otype for r in reps)
    return {t: c.get(t, 0) for t in (ZERO, TYPE_A, TYPE_B, TYPE_C)}
