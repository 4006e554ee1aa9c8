import itertools

import pytest

from orthosep.errors import NotFound, NotFoundWithinBudget, NotSeparating, PoolTooLarge
from orthosep.gf import field_make
from orthosep.group import all_elements, generators, point
from orthosep.invariants import (U, expand_set, make_invariant, minimal_set, set_chen,
                                 set_Tm, set_Tm2)
from orthosep.invspace import invariant_basis_up_to
from orthosep.orbits import orbit_count_formula, same_orbit
from orthosep.poly import p_eval
from orthosep.separate import (beta_sep, fingerprint, gamma_sep_check, integer_log_ceil,
                               is_minimal, is_separating, min_separating_subset,
                               orbit_rep_codes, separates_by_definition, sigma_sep_bounded)


def only(S, *labels):
    return S.subset([S.labels.index(x) for x in labels], "+".join(labels))


def not_separated(S, u, v):
    return fingerprint(S, u) == fingerprint(S, v) and not same_orbit(u, v)


def test_t1_separates_q2():
    rep = is_separating(set_Tm(1, field_make(2)))
    assert rep.separating and rep.kappa == 3


def test_n1_alone_fails_with_zero_vs_e0():
    F = field_make(2)
    rep = is_separating(only(set_Tm(1, F), "N_1"))
    assert not rep.separating
    w = rep.witnesses[0]
    assert {tuple(map(tuple, w["u"])), tuple(map(tuple, w["v"]))} == {((0, 0),), ((1, 0),)}
    assert w["same_orbit"] is False


def test_tm2_q2_m2():
    rep = is_separating(set_Tm2(2, field_make(2)))
    assert rep.separating and rep.kappa == 10


def test_minimality_examples_q3():
    F = field_make(3)
    S = set_Tm(2, F)
    rep = is_minimal(S)
    assert rep.minimal and len(rep.witnesses) == 6
    for w in rep.witnesses:
        assert w["fingerprint"] is not None and w["same_orbit"] is False
    # the collisions used in the minimality argument, for alpha = 2
    e0 = (1, 0)
    assert not_separated(S.without(S.labels.index("H_12")), point(F, e0, e0), point(F, e0, (2, 0)))
    assert not_separated(S.without(S.labels.index("U_12")),
                         point(F, e0, (0, 1)), point(F, e0, (0, 2)))


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_minimality_collisions_general_q(q):
    F = field_make(q)
    S = set_Tm(2, F)
    e0 = (1, 0)
    for a in range(2, q):
        assert not_separated(S.without(S.labels.index("H_12")), point(F, e0, e0), point(F, e0, (a, 0)))
        assert not_separated(S.without(S.labels.index("U_12")),
                             point(F, e0, (0, 1)), point(F, e0, (0, a)))


def test_minimality_examples_q2():
    F = field_make(2)
    S = set_Tm2(2, F)
    assert is_minimal(S).minimal
    assert not_separated(S.without(S.labels.index("U_12")),
                         point(F, (1, 0), (1, 0)), point(F, (1, 0), (0, 1)))
    rep = is_minimal(set_Tm(1, F))
    assert rep.minimal and [w["removed"] for w in rep.witnesses] == ["N_1", "T_1"]
    # T_1 = x + y alone misses 0 vs (1, 1) at q = 2
    assert not_separated(only(set_Tm(1, F), "T_1"), point(F, (0, 0)), point(F, (1, 1)))


def test_is_minimal_requires_separating():
    with pytest.raises(NotSeparating):
        is_minimal(set_Tm2(2, field_make(3)))


def test_tm2_not_enough_beyond_q2():
    for q in (3, 4, 5):
        assert not is_separating(set_Tm2(2, field_make(q))).separating


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_minimal_separating(q, m):
    rep = is_minimal(set_Tm(m, field_make(q)))
    assert rep.separating and rep.minimal


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_minimal_separating_q2(m):
    rep = is_minimal(set_Tm2(m, field_make(2)))
    assert rep.separating and rep.minimal


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_oracle_agreement(q, m):
    F = field_make(q)
    pools = [set_Tm(m, F), set_Tm2(m, F), set_chen(m, F)]
    candidates = []
    for S in pools:
        candidates.append(S)
        candidates.extend(S.without(i) for i in range(len(S)))
    for S in candidates:
        assert is_separating(S).separating == separates_by_definition(S, m, F), S.name


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)])
def test_fingerprints_constant_on_orbits(q, m):
    F = field_make(q)
    S = minimal_set(m, F)
    for pairs in orbit_rep_codes(m, F):
        r = point(F, *pairs)
        ref = fingerprint(S, r)
        for g in all_elements(F):
            assert fingerprint(S, g.act_tuple(r)) == ref


def test_monotonicity():
    F = field_make(3)
    base = set_Tm(2, F)
    bigger = set_chen(2, F)
    union = type(base)("union", 2, F, base.members + bigger.members)
    assert is_separating(base).separating and is_separating(union).separating


@pytest.mark.parametrize("q", [2, 4, 8])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_chen_separates(q, m):
    assert is_separating(set_chen(m, field_make(q))).separating


@pytest.mark.parametrize("q", [2, 4])
def test_chen_refines_tm(q):
    F = field_make(q)
    m = 2
    chen, tm = set_chen(m, F), minimal_set(m, F)
    vecs = list(itertools.product(range(q), repeat=2))
    seen = {}
    for pairs in itertools.product(vecs, repeat=m):
        p = point(F, *pairs)
        key = fingerprint(chen, p)
        if key in seen:
            assert seen[key] == fingerprint(tm, p)
        seen[key] = fingerprint(tm, p)


@pytest.mark.parametrize("q,m,expected", [(2, 2, 2), (3, 2, 2), (5, 1, 4), (2, 1, 2), (4, 1, 3)])
def test_beta_examples(q, m, expected):
    assert beta_sep(m, field_make(q), 6).beta_sep == expected


def test_beta_below_witness_really_collides():
    F = field_make(5)
    rep = beta_sep(2, F, 6)
    w = rep.below_witness
    u, v = point(F, *w["u"]), point(F, *w["v"])
    assert not same_orbit(u, v)
    for graded in invariant_basis_up_to(2, rep.beta_sep - 1, F):
        for f in graded.basis:
            assert p_eval(f, u) == p_eval(f, v)


def test_beta_independent_of_primitive():
    F = field_make(7)
    prims = [a for a in F.units() if a.multiplicative_order() == 6]
    values = {beta_sep(2, F, 7, generators(F, g)).beta_sep for g in prims}
    assert values == {6}


def test_beta_not_found():
    with pytest.raises(NotFoundWithinBudget):
        beta_sep(1, field_make(5), 3)


def test_sigma_q2():
    F = field_make(2)
    rep = sigma_sep_bounded(F, 3)
    assert rep.verified
    S = expand_set(set_Tm(1, F), 2)
    u, v = point(F, (1, 0), (1, 0)), point(F, (1, 0), (0, 1))
    assert fingerprint(S, u) == fingerprint(S, v) and not same_orbit(u, v)
    U12 = make_invariant(U(1, 2), 2, F)
    assert (p_eval(U12, u), p_eval(U12, v)) == (F(0), F(1))


def test_sigma_q3():
    rep = sigma_sep_bounded(field_make(3), 3)
    assert rep.verified
    assert rep.levels[-1]["kappa"] == 196 == orbit_count_formula(3, 3).kappa
    assert all(level["equals_minimal_set"] for level in rep.levels)
    assert rep.levels[0]["m"] == 2 and rep.levels[0]["separating"]


def test_sigma_bad_bound():
    with pytest.raises(ValueError):
        sigma_sep_bounded(field_make(3), 1)


def test_integer_log_oracle():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for kappa in range(1, 3000, 7):
            g = integer_log_ceil(kappa, q)
            assert q ** g >= kappa and (g == 0 or q ** (g - 1) < kappa)


def test_gamma_examples():
    F2, F3 = field_make(2), field_make(3)
    r = gamma_sep_check(2, F2)
    assert (r.kappa, r.gamma, r.bound_ok) == (10, 4, True)
    r = gamma_sep_check(1, F3)
    assert (r.kappa, r.gamma, r.bound_ok) == (4, 2, True)
    r = gamma_sep_check(3, field_make(5))
    assert r.gamma <= 6 and r.kappa == orbit_count_formula(3, 5).kappa


def test_gamma_pool_search():
    F = field_make(3)
    r = gamma_sep_check(2, F, set_Tm(2, F))
    assert r.pool_smaller_separating is False


def test_min_subset_examples():
    F = field_make(2)
    found = min_separating_subset(set_Tm(1, F))
    assert found.labels == ["N_1", "T_1"]
    with pytest.raises(NotFound):
        min_separating_subset(set_Tm2(2, F), size_cap=4)
    with pytest.raises(NotFound):
        min_separating_subset(only(set_Tm(1, F), "N_1"))
    with pytest.raises(PoolTooLarge):
        min_separating_subset(set_chen(3, field_make(8)))


def test_min_subset_of_chen():
    F = field_make(2)
    found = min_separating_subset(set_chen(2, F))
    assert len(found) >= gamma_sep_check(2, F).gamma
    assert is_separating(found).separating
