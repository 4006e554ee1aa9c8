"""Separating-set certification over F_q-points.

A set S separates V^m when its fingerprint (the tuple of values of the
members) differs on any two points of different orbits.  Fingerprints are
constant on orbits, so it is enough to compare the canonical representatives.
"""

from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field

from .errors import NotFound, NotFoundWithinBudget, NotSeparating, PoolTooLarge
from .gf import FieldSpec
from .group import GroupElement, PointTuple, all_elements
from .invariants import InvariantSet, expand_set, minimal_set, set_Tm, set_Tm2
from .invspace import invariant_basis
from .orbits import _canonical_codes, _grammar_codes, orbit_codes, orbit_count_formula

MAX_POOL = 24


@functools.lru_cache(maxsize=64)
def orbit_rep_codes(m: int, spec: FieldSpec) -> tuple:
    """Canonical representatives as code-pair tuples, sorted."""
    return tuple(sorted(_grammar_codes(spec, m)))


def flat(pairs) -> tuple[int, ...]:
    return tuple(u for u, _ in pairs) + tuple(v for _, v in pairs)


def fingerprint(S: InvariantSet, pt: PointTuple) -> tuple:
    """Values of the members of S at pt, as field elements."""
    from .poly import p_eval
    return tuple(p_eval(f, pt) for f in S.polys)


def fingerprint_table(polys, reps) -> list[tuple[int, ...]]:
    evs = [f.evaluator() for f in polys]
    out = []
    for pairs in reps:
        x = flat(pairs)
        out.append(tuple(ev(x) for ev in evs))
    return out


def first_collision(table, reps, columns=None):
    """First pair of reps with equal (projected) fingerprints, or None."""
    if columns is not None:
        table = [tuple(row[c] for c in columns) for row in table]
    order = sorted(range(len(reps)), key=lambda i: (table[i], reps[i]))
    for a, b in zip(order, order[1:]):
        if table[a] == table[b]:
            return reps[a], reps[b], table[a]
    return None


def _witness(spec, m, collision, removed=None) -> dict:
    u, v, fp = collision
    pu = PointTuple.from_codes(spec, u)
    pv = PointTuple.from_codes(spec, v)
    return {
        "removed": removed,
        "u": [list(p) for p in u],
        "v": [list(p) for p in v],
        "u_type": _canonical_codes(spec, u)[2][0],
        "v_type": _canonical_codes(spec, v)[2][0],
        "fingerprint": list(fp),
        # distinct canonical forms; re-checked against every group element
        "same_orbit": any(g.act_tuple(pu) == pv for g in all_elements(spec)),
    }


@dataclass
class SeparationReport:
    q: int
    m: int
    set_name: str
    size: int
    kappa: int
    separating: bool
    witnesses: list = field(default_factory=list)
    minimal: bool | None = None
    runtime_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "q": self.q, "m": self.m, "set": self.set_name, "size": self.size,
            "kappa": self.kappa, "separating": self.separating, "minimal": self.minimal,
            "witnesses": self.witnesses, "runtime_ms": round(self.runtime_ms, 3),
        }
        out.update(self.extra)
        return out


def is_separating(S: InvariantSet, m: int | None = None, spec: FieldSpec | None = None,
                  check_invariance: bool = True) -> SeparationReport:
    m = S.m if m is None else m
    spec = S.spec if spec is None else spec
    t0 = time.perf_counter()
    if check_invariance:
        S.check_invariant()
    reps = orbit_rep_codes(m, spec)
    table = fingerprint_table(S.polys, reps)
    hit = first_collision(table, reps)
    return SeparationReport(
        spec.q, m, S.name, len(S), len(reps), hit is None,
        [] if hit is None else [_witness(spec, m, hit)],
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


def is_minimal(S: InvariantSet, m: int | None = None, spec: FieldSpec | None = None,
               check_invariance: bool = True) -> SeparationReport:
    """Separation plus one collision witness for every single removal."""
    m = S.m if m is None else m
    spec = S.spec if spec is None else spec
    t0 = time.perf_counter()
    if check_invariance:
        S.check_invariant()
    reps = orbit_rep_codes(m, spec)
    table = fingerprint_table(S.polys, reps)
    if first_collision(table, reps) is not None:
        raise NotSeparating(f"{S.name} does not separate V^{m} over GF({spec.q})")
    witnesses = []
    minimal = True
    for i, label in enumerate(S.labels):
        keep = [c for c in range(len(S)) if c != i]
        hit = first_collision(table, reps, keep)
        if hit is None:
            minimal = False
            witnesses.append({"removed": label, "u": None, "v": None})
        else:
            witnesses.append(_witness(spec, m, hit, removed=label))
    return SeparationReport(spec.q, m, S.name, len(S), len(reps), True, witnesses, minimal,
                            (time.perf_counter() - t0) * 1000)


def separates_by_definition(S: InvariantSet, m: int, spec: FieldSpec) -> bool:
    """Check every pair of raw tuples: equal fingerprints must mean same orbit.

    Independent of canonical forms; exponential, for small q and m only.
    """
    evs = [f.evaluator() for f in S.polys]
    classes: dict[tuple, list] = {}
    vecs = list(itertools.product(range(spec.q), repeat=2))
    for pairs in itertools.product(vecs, repeat=m):
        x = flat(pairs)
        classes.setdefault(tuple(ev(x) for ev in evs), []).append(pairs)
    for members in classes.values():
        orbit = orbit_codes(spec, members[0])
        if any(p not in orbit for p in members[1:]):
            return False
    return True


@dataclass
class BetaReport:
    q: int
    m: int
    beta_sep: int
    dims: list
    below_witness: dict | None
    runtime_ms: float

    def as_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "beta_sep": self.beta_sep, "dims": self.dims,
                "below_witness": self.below_witness, "runtime_ms": round(self.runtime_ms, 3)}


def expected_beta(q: int) -> int:
    return 2 if q == 2 else q - 1


def beta_sep(m: int, spec: FieldSpec, D_max: int,
             gens: list[GroupElement] | None = None) -> BetaReport:
    """Smallest d such that all invariants of degree <= d separate."""
    t0 = time.perf_counter()
    reps = orbit_rep_codes(m, spec)
    polys = []
    dims = []
    previous = None
    for d in range(1, D_max + 1):
        basis = invariant_basis(m, d, spec, gens)
        dims.append(basis.dim)
        polys.extend(basis.basis)
        hit = first_collision(fingerprint_table(polys, reps), reps)
        if hit is None:
            below = None if previous is None else _witness(spec, m, previous)
            return BetaReport(spec.q, m, d, dims, below, (time.perf_counter() - t0) * 1000)
        previous = hit
    raise NotFoundWithinBudget(f"invariants of degree <= {D_max} do not separate V^{m}")


@dataclass
class SigmaReport:
    q: int
    M_max: int
    base_witness: dict | None
    levels: list
    verified: bool

    def as_dict(self) -> dict:
        return {"q": self.q, "max_m": self.M_max, "sigma_sep": 2 if self.verified else None,
                "verified_up_to": self.M_max if self.verified else None,
                "T1_expanded_witness": self.base_witness, "levels": self.levels}


def sigma_sep_bounded(spec: FieldSpec, M_max: int) -> SigmaReport:
    """Expansions of the m=1 set fail at m=2; expansions of the m=2 set keep separating."""
    if M_max < 2:
        raise ValueError("M_max must be at least 2")
    t1 = expand_set(set_Tm(1, spec), 2)
    rep1 = is_separating(t1)
    base = set_Tm2(2, spec) if spec.q == 2 else set_Tm(2, spec)
    levels = []
    ok = not rep1.separating
    for m in range(2, M_max + 1):
        expanded = expand_set(base, m)
        rep = is_separating(expanded)
        same = expanded.poly_set() == minimal_set(m, spec).poly_set()
        levels.append({"m": m, "size": len(expanded), "separating": rep.separating,
                       "kappa": rep.kappa, "equals_minimal_set": same})
        ok = ok and rep.separating
    return SigmaReport(spec.q, M_max, rep1.witnesses[0] if rep1.witnesses else None, levels, ok)


def integer_log_ceil(kappa: int, q: int) -> int:
    """Smallest g with q**g >= kappa."""
    g, power = 0, 1
    while power < kappa:
        power *= q
        g += 1
    return g


@dataclass
class GammaReport:
    q: int
    m: int
    kappa: int
    gamma: int
    bound_ok: bool
    pool_name: str | None = None
    pool_smaller_separating: bool | None = None

    def as_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "kappa": self.kappa, "gamma": self.gamma,
                "two_m": 2 * self.m, "bound_ok": self.bound_ok, "pool": self.pool_name,
                "pool_has_smaller_separating": self.pool_smaller_separating}


def gamma_sep_check(m: int, spec: FieldSpec, pool: InvariantSet | None = None) -> GammaReport:
    """gamma = ceil(log_q kappa); check gamma <= 2m and, given a pool, that no
    subset smaller than gamma separates."""
    kappa = orbit_count_formula(m, spec.q).kappa
    gamma = integer_log_ceil(kappa, spec.q)
    report = GammaReport(spec.q, m, kappa, gamma, gamma <= 2 * m)
    if pool is not None:
        if len(pool) > MAX_POOL:
            raise PoolTooLarge(f"pool of {len(pool)} exceeds {MAX_POOL}")
        reps = orbit_rep_codes(m, spec)
        table = fingerprint_table(pool.polys, reps)
        found = False
        for size in range(1, min(gamma, len(pool) + 1)):
            # fewer than gamma coordinates take at most q**size < kappa values
            assert spec.q ** size < kappa
            for cols in itertools.combinations(range(len(pool)), size):
                if first_collision(table, reps, cols) is None:
                    found = True
        report.pool_name = pool.name
        report.pool_smaller_separating = found
    return report


def min_separating_subset(pool: InvariantSet, m: int | None = None,
                          spec: FieldSpec | None = None, size_cap: int | None = None) -> InvariantSet:
    """Lexicographically first smallest separating subset of the pool."""
    m = pool.m if m is None else m
    spec = pool.spec if spec is None else spec
    if len(pool) > MAX_POOL:
        raise PoolTooLarge(f"pool of {len(pool)} exceeds {MAX_POOL}")
    cap = len(pool) if size_cap is None else min(size_cap, len(pool))
    reps = orbit_rep_codes(m, spec)
    table = fingerprint_table(pool.polys, reps)
    for size in range(1, cap + 1):
        for cols in itertools.combinations(range(len(pool)), size):
            if first_collision(table, reps, cols) is None:
                return pool.subset(cols, f"{pool.name} subset")
    raise NotFound(f"no separating subset of {pool.name} with at most {cap} members")
