import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from sd120.modfield import (
    FACTOR_TABLE,
    FactorizationIncomplete,
    PElement,
    PField,
    find_primitive,
    group_factorization,
    hermitian_ip,
    identity,
    is_prime,
    mul,
    mult_order_of_2,
    power,
    reciprocal_ip,
    trial_factor,
    zero,
)

from . import oracles


def elements(p):
    return st.integers(0, (1 << p) - 1).map(lambda b: PElement(p, b ^ (b.bit_count() & 1)))


def test_order_of_two():
    assert [mult_order_of_2(p) for p in (3, 5, 7, 11, 13, 17, 23, 29, 59)] == [2, 4, 3, 10, 12, 8, 11, 28, 58]
    assert mult_order_of_2(3033169) == 58
    for bad in (1, 2, 9, 15):
        with pytest.raises(ValueError):
            mult_order_of_2(bad)


@pytest.mark.parametrize("p", sorted(FACTOR_TABLE))
def test_factor_table_multiplies_back(p):
    fac = FACTOR_TABLE[p]
    assert math.prod(q**e for q, e in fac.items()) == (1 << (p - 1)) - 1
    assert all(is_prime(q) for q in fac)


def test_factorisations_by_trial_division():
    assert trial_factor((1 << 29) - 1) == {233: 1, 1103: 1, 2089: 1}
    assert trial_factor((1 << 29) + 1) == {3: 1, 59: 1, 3033169: 1}
    assert trial_factor((1 << 58) - 1) == FACTOR_TABLE[59]
    assert group_factorization(13) == trial_factor((1 << 12) - 1)


def test_trial_factor_gives_up_honestly():
    big = (2**61 - 1) * (2**31 - 1)
    with pytest.raises(FactorizationIncomplete):
        trial_factor(big, bound=1000)


def test_element_rules():
    with pytest.raises(ValueError):
        PElement(5, 0b1)  # odd weight
    with pytest.raises(ValueError):
        PElement(5, 1 << 5)
    e = identity(5)
    assert str(e) == "x + x^2 + x^3 + x^4"
    assert PElement.monomial_times_identity(5, 1) == e.shift(1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_identity_is_neutral(p):
    rng = random.Random(p)
    f = PField(p)
    e = identity(p)
    for _ in range(20):
        a = f.random_element(rng)
        assert mul(a, e) == a == mul(e, a)


@given(st.sampled_from([5, 7, 11, 13]).flatmap(lambda p: st.tuples(elements(p), elements(p), elements(p))))
@settings(max_examples=150, deadline=None)
def test_ring_laws_and_convolution(t):
    a, b, c = t
    p = a.p
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    got = mul(a, b).bits
    want = oracles.to_int(oracles.cyclic_conv(list(oracles.bits(a.bits, p)), list(oracles.bits(b.bits, p)), p))
    assert got == want
    assert a.square() == mul(a, a)


@given(st.sampled_from([5, 11, 13]).flatmap(elements))
@settings(max_examples=80, deadline=None)
def test_field_inverse(a):
    f = PField(a.p)
    assert f.is_field
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            f.inverse(a)
    else:
        assert mul(a, f.inverse(a)) == identity(a.p)
        assert f.group_order % f.element_order(a) == 0


def test_power_rules():
    a = PElement(11, 0b110)
    assert power(a, 0) == identity(11)
    assert power(a, 5) == mul(power(a, 2), power(a, 3))
    with pytest.raises(ValueError):
        power(a, -1)


def test_not_a_field():
    f = PField(7)
    assert not f.is_field and f.s == 3
    with pytest.raises(ValueError):
        f.is_primitive(identity(7))
    with pytest.raises(ValueError):
        PField(9)


def test_primitive_element_p59():
    f = PField(59)
    assert f.is_field and f.s == 58
    assert f.q == 1 << 29
    a = find_primitive(f, 20240601)
    assert f.element_order(a) == f.group_order
    delta = power(a, (1 << 29) - 1)
    assert power(delta, (1 << 29) + 1) == identity(59)
    for r in (3, 59, 3033169):
        assert power(delta, ((1 << 29) + 1) // r) != identity(59)


def test_p59_frobenius():
    # in field mode v^q equals v(x^-1)
    f = PField(59)
    rng = random.Random(0)
    for _ in range(5):
        v = f.random_element(rng)
        assert power(v, f.q) == v.conjugate()


def test_x_e_has_order_p():
    for p in (5, 11, 59):
        xe = identity(p).shift(1)
        assert power(xe, p) == identity(p)
        assert power(xe, 1) != identity(p)


def test_substitution_is_ring_map():
    rng = random.Random(4)
    f = PField(13)
    for t in (1, 2, 5, 12):
        a, b = f.random_element(rng), f.random_element(rng)
        assert mul(a, b).substitute(t) == mul(a.substitute(t), b.substitute(t))
    with pytest.raises(ValueError):
        identity(13).substitute(13)


def test_reciprocal_form_matches_binary_inner_products():
    # coefficient j of sum u_i v_i(x^-1) is <u, v shifted by j>
    p = 7
    u = [PElement(p, 0b11), PElement(p, 0b1010)]
    v = [PElement(p, 0b110), PElement(p, 0b1001000)]
    ip = reciprocal_ip(u, v)
    for j in range(p):
        s = sum((a.bits & b.shift(j).bits).bit_count() for a, b in zip(u, v)) % 2
        assert (ip.bits >> j) & 1 == s
    assert zero(p).is_zero()


def test_hermitian_fast_path_matches_power():
    f = PField(11)
    rng = random.Random(1)
    u = [f.random_element(rng) for _ in range(3)]
    v = [f.random_element(rng) for _ in range(3)]
    slow = zero(11)
    for a, b in zip(u, v):
        slow = slow + mul(a, power(b, 32))
    assert hermitian_ip(u, v, 32) == slow
    assert hermitian_ip(u, v, f.q) == reciprocal_ip(u, v)
