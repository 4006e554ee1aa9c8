import itertools

import pytest
from hypothesis import given, strategies as st

from orthosep.errors import DivisionByZero, FieldTooLarge, MixedFields, NotAPrimePower
from orthosep.gf import (enumerate_field, field_make, inv, is_irreducible, primitive_element)

SMALL = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_field_spec():
    F = field_make(2)
    assert (F.p, F.k, F.q, F.modulus) == (2, 1, 2, None)


def test_gf4_modulus_is_the_only_root_free_monic_quadratic():
    # oracle: a quadratic over F_2 is irreducible iff it has no root in F_2
    root_free = [(c0, c1, 1) for c0, c1 in itertools.product(range(2), repeat=2)
                 if all((c0 + c1 * x + x * x) % 2 for x in range(2))]
    assert root_free == [(1, 1, 1)]
    assert field_make(4).modulus == (1, 1, 1)


@pytest.mark.parametrize("q", [1, 0, 6, 12, 18, 100])
def test_not_a_prime_power(q):
    with pytest.raises(NotAPrimePower):
        field_make(q)


def test_bound():
    assert field_make(64).q == 64
    with pytest.raises(FieldTooLarge):
        field_make(128)


def test_specs_are_shared():
    assert field_make(9) is field_make(9)


def test_small_examples():
    F2, F3 = field_make(2), field_make(3)
    assert F2(1) + F2(1) == F2(0)
    assert inv(F3(2)) == F3(2)
    F4 = field_make(4)
    t = F4.from_rep((0, 1))
    # t^2 = t + 1 modulo t^2 + t + 1
    assert t * t == F4.from_rep((1, 1))


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        field_make(5)(0).inverse()
    with pytest.raises(ZeroDivisionError):
        field_make(4)(1) / field_make(4)(0)


def test_mixed_fields():
    with pytest.raises(MixedFields):
        field_make(3)(1) + field_make(5)(1)


def test_enumerate_order():
    assert [a.code for a in enumerate_field(field_make(2))] == [0, 1]
    assert [a.rep for a in enumerate_field(field_make(3))] == [(0,), (1,), (2,)]
    # 0, 1, t, t+1 as low-first coefficient tuples
    assert [a.rep for a in enumerate_field(field_make(4))] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert [str(a) for a in enumerate_field(field_make(4))] == ["0", "1", "t", "t+1"]


@pytest.mark.parametrize("q", SMALL)
def test_enumerate_distinct_and_ordered(q):
    F = field_make(q)
    elems = enumerate_field(F)
    assert len(set(elems)) == q
    assert elems[0] == F.zero and elems[1] == F.one
    rest = [tuple(reversed(a.rep)) for a in elems[2:]]
    assert rest == sorted(rest)


def test_primitive_elements():
    assert primitive_element(field_make(3)).code == 2
    assert primitive_element(field_make(2)).code == 1
    # oracle: the powers of 2 mod 5 run through 2, 4, 3, 1
    assert [pow(2, e, 5) for e in range(1, 5)] == [2, 4, 3, 1]
    assert primitive_element(field_make(5)).code == 2


@pytest.mark.parametrize("q", SMALL)
def test_primitive_generates(q):
    F = field_make(q)
    g = primitive_element(F)
    assert {g ** e for e in range(q - 1)} == set(F.units())


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms_exhaustive(q):
    F = field_make(q)
    E = F.elements()
    for a, b in itertools.product(E, repeat=2):
        assert a + b == b + a and a * b == b * a
    for a, b, c in itertools.product(E, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in E:
        assert a + (-a) == F.zero
        assert a ** q == a
        if a:
            assert a * a.inverse() == F.one
            assert a ** (q - 1) == F.one


@pytest.mark.parametrize("q", [16, 27, 32, 49, 64])
def test_modulus_irreducible(q):
    F = field_make(q)
    assert is_irreducible(list(F.modulus), F.p)
    assert len(F.modulus) == F.k + 1 and F.modulus[-1] == 1


@given(st.sampled_from([25, 27, 32, 49, 64]), st.data())
def test_field_axioms_sampled(q, data):
    F = field_make(q)
    a, b, c = (F(data.draw(st.integers(0, q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a
    assert a ** q == a


def test_integer_coercion():
    F = field_make(7)
    assert F(3) + 5 == F(1)
    assert 2 * F(4) == F(1)
    assert F.from_int(-1) == F(6)
