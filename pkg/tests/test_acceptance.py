"""Acceptance gate: ten criteria, each timed against its budget.

Each test records one PASS/FAIL line that is printed in the terminal summary.
"""

import itertools
import time
from collections import defaultdict

from orthosep.gf import field_make
from orthosep.group import all_elements
from orthosep.invariants import (H, T, expand_set, make_invariant, minimal_set, set_chen, set_Tm,
                                 set_Tm2)
from orthosep.invspace import check_m1_generation, invariant_basis_up_to
from orthosep.orbits import (_canonical_codes, orbit_codes, orbit_count_formula,
                             orbit_partition)
from orthosep.separate import (beta_sep, expected_beta, gamma_sep_check, is_minimal,
                               min_separating_subset, orbit_rep_codes, sigma_sep_bounded)
from orthosep.errors import NotFound

GRID = ([(q, m) for q in (2, 3, 4, 5, 7, 8, 9) for m in (1, 2)]
        + [(q, 3) for q in (2, 3, 4, 5)])


def finish(record, name, ok, t0, limit, detail=""):
    elapsed = time.perf_counter() - t0
    passed = ok and (limit is None or elapsed < limit)
    budget = "" if limit is None else f" (limit {limit:g}s)"
    record(name, passed, f"{elapsed:.2f}s{budget} {detail}".rstrip())
    assert ok, detail
    if limit is not None:
        assert elapsed < limit, f"{name} took {elapsed:.1f}s"


def test_01_orbit_count(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for q, m in GRID:
        spec = field_make(q)
        count = orbit_count_formula(m, q)
        part = orbit_partition(m, spec, budget=10 ** 8)
        by_type = defaultdict(int)
        for pairs in part:
            by_type[_canonical_codes(spec, pairs)[2][0]] += 1
        if (len(part) != count.kappa or sum(part.values()) != q ** (2 * m)
                or (by_type["0"], by_type["a"], by_type["b"], by_type["c"])
                != (1, count.k1, count.k2, count.k3)):
            bad.append((q, m))
    finish(record_criterion, "1 orbit count", not bad, t0, 30, f"{len(GRID)} cells, bad={bad}")


def test_02_canonical_uniqueness(record_criterion):
    # Two tuples share a canonical form iff they lie in one orbit: the classes
    # cut out by the canonical form must be exactly the orbits.
    t0 = time.perf_counter()
    bad = []
    for q in (2, 3, 4):
        spec = field_make(q)
        vecs = list(itertools.product(range(q), repeat=2))
        for m in (1, 2, 3):
            classes = defaultdict(set)
            for pairs in itertools.product(vecs, repeat=m):
                classes[_canonical_codes(spec, pairs)[0]].add(pairs)
            for canon, members in classes.items():
                if members != orbit_codes(spec, canon):
                    bad.append((q, m, canon))
    finish(record_criterion, "2 canonical uniqueness", not bad, t0, 60, f"bad={bad[:3]}")


def test_03_minimal_separating_set(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for q, m in GRID:
        rep = is_minimal(minimal_set(m, field_make(q)))
        if not (rep.separating and rep.minimal and all(w["same_orbit"] is False
                                                        for w in rep.witnesses)):
            bad.append((q, m))
    finish(record_criterion, "3 minimal separating set", not bad, t0, 60, f"{len(GRID)} cells, bad={bad}")


def test_04_cardinalities(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 9):
        for q in (3, 5):
            if len(set_Tm(m, field_make(q))) != m * m + m:
                bad.append(("Tm", q, m))
        if len(set_Tm2(m, field_make(2))) != (m * m + 3 * m) // 2:
            bad.append(("Tm2", 2, m))
        if len(set_Tm(m, field_make(2))) != (m * m + 3 * m) // 2:
            bad.append(("Tm at q=2", 2, m))
    finish(record_criterion, "4 cardinalities", not bad, t0, 5, f"bad={bad}")


def _collides(spec, m, witness, d):
    from orthosep.group import PointTuple
    from orthosep.poly import p_eval
    u = PointTuple.from_codes(spec, tuple(map(tuple, witness["u"])))
    v = PointTuple.from_codes(spec, tuple(map(tuple, witness["v"])))
    return not witness["same_orbit"] and all(
        p_eval(f, u) == p_eval(f, v)
        for graded in invariant_basis_up_to(m, d, spec) for f in graded.basis)


def test_05_beta_sep(record_criterion):
    t0 = time.perf_counter()
    bad, found = [], {}
    for q in (2, 3, 4, 5, 7):
        spec = field_make(q)
        for m in (1, 2):
            rep = beta_sep(m, spec, expected_beta(q) + 1)
            found[(q, m)] = rep.beta_sep
            ok = rep.beta_sep == expected_beta(q)
            ok = ok and rep.below_witness is not None and _collides(spec, m, rep.below_witness,
                                                                   rep.beta_sep - 1)
            if not ok:
                bad.append((q, m))
    detail = " ".join(f"q{q}m{m}={b}" for (q, m), b in sorted(found.items()))
    finish(record_criterion, "5 beta_sep", not bad, t0, 120, f"{detail} bad={bad}")


def test_06_sigma_sep(record_criterion):
    t0 = time.perf_counter()
    ok = True
    for q in (2, 3):
        rep = sigma_sep_bounded(field_make(q), 4)
        w = rep.base_witness
        ok = ok and rep.verified and w is not None and w["same_orbit"] is False
        ok = ok and [lv["m"] for lv in rep.levels] == [2, 3, 4]
    finish(record_criterion, "6 sigma_sep", ok, t0, 60, "q in {2,3}, m <= 4")


def test_07_gamma_sep(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for q, m in GRID:
        rep = gamma_sep_check(m, field_make(q))
        lower = q ** (rep.gamma - 1) < rep.kappa <= q ** rep.gamma
        if not (rep.bound_ok and lower):
            bad.append((q, m))
    spec = field_make(2)
    pool = set_Tm(1, spec)
    try:
        min_separating_subset(pool, size_cap=1)
        exact_ok = False
    except NotFound:
        exact_ok = True
    exact_ok = exact_ok and gamma_sep_check(1, spec, pool).pool_smaller_separating is False
    finish(record_criterion, "7 gamma_sep", not bad and exact_ok, t0, 5,
           f"bad={bad} no size-1 subset of T_1 at q=2: {exact_ok}")


def test_08_invariance(record_criterion):
    t0 = time.perf_counter()
    checked = 0
    for q in (2, 3, 4, 8):
        spec = field_make(q)
        group = all_elements(spec)
        assert len(group) == 2 * (q - 1)
        for m in (1, 2, 3):
            for S in (set_Tm(m, spec), set_Tm2(m, spec), set_chen(m, spec)):
                S.check_invariant(group)
                checked += len(S)
    finish(record_criterion, "8 invariance", True, t0, 30, f"{checked} members checked")


def test_09_m1_generation(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for q in (2, 3, 5):
        ok, reports = check_m1_generation(field_make(q), 2 * (q - 1) + 2)
        if not ok:
            bad.append((q, [r.d for r in reports if not r.ok]))
    finish(record_criterion, "9 m=1 generation", not bad, t0, 30, f"bad={bad}")


def test_10_h_equals_t(record_criterion):
    t0 = time.perf_counter()
    spec = field_make(2)
    pairs = list(itertools.combinations(range(1, 5), 2))
    ok = all(make_invariant(H(i, j), 4, spec) == make_invariant(T(i), 4, spec) for i, j in pairs)
    # expanding the m = 2 set reproduces the minimal set at q = 2
    ok = ok and expand_set(set_Tm2(2, spec), 4).poly_set() == set_Tm2(4, spec).poly_set()
    finish(record_criterion, "10 H equals T at q=2", ok, t0, 5, f"{len(pairs)} pairs")
