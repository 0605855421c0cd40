import math

import pytest
from hypothesis import given, settings, strategies as st

from cyclofactor import intarith


def test_factorize_small():
    assert intarith.factorize(1) == ()
    assert intarith.factorize(2) == ((2, 1),)
    assert intarith.factorize(12) == ((2, 2), (3, 1))
    assert intarith.factorize(6056) == ((2, 3), (757, 1))
    assert intarith.factorize(36488) == ((2, 3), (4561, 1))


def test_factorize_large_semiprime():
    n = 1000003 * 1000033
    assert intarith.factorize(n) == ((1000003, 1), (1000033, 1))


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        intarith.factorize(0)


def test_is_prime():
    assert intarith.is_prime(2)
    assert intarith.is_prime(757)
    assert intarith.is_prime(4561)
    assert not intarith.is_prime(1)
    assert not intarith.is_prime(6056)
    assert intarith.is_prime(2**61 - 1)


def test_radical():
    assert intarith.radical(1) == 1
    assert intarith.radical(12) == 6
    assert intarith.radical(36488) == 9122


def test_valuation():
    assert intarith.valuation(2, 40) == 3
    assert intarith.valuation(3, 40) == 0
    assert intarith.valuation(7, 343) == 3
    with pytest.raises(ValueError):
        intarith.valuation(2, 0)


def test_divisors():
    assert intarith.divisors(1) == [1]
    assert intarith.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert len(intarith.divisors(6056)) == 8


def test_euler_phi():
    assert intarith.euler_phi(1) == 1
    assert intarith.euler_phi(10) == 4
    assert intarith.euler_phi(73) == 72


def test_mult_order():
    assert intarith.mult_order(2, 73) == 9
    assert intarith.mult_order(2, 151) == 15
    assert intarith.mult_order(3, 757) == 9
    assert intarith.mult_order(5, 1) == 1
    with pytest.raises(ValueError):
        intarith.mult_order(2, 4)


@settings(derandomize=True, max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_reassembles(n):
    prod = 1
    prev = 0
    for p, e in intarith.factorize(n):
        assert p > prev and e >= 1 and intarith.is_prime(p)
        prev = p
        prod *= p**e
    assert prod == n


@settings(derandomize=True, max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=3000))
def test_phi_sums_over_divisors(n):
    assert sum(intarith.euler_phi(d) for d in intarith.divisors(n)) == n


@settings(derandomize=True, max_examples=100, deadline=None)
@given(st.integers(min_value=2, max_value=2000), st.integers(min_value=2, max_value=50))
def test_mult_order_is_minimal(m, a):
    if math.gcd(a, m) != 1:
        return
    k = intarith.mult_order(a, m)
    assert pow(a, k, m) == 1
    for p, _ in intarith.factorize(k):
        assert pow(a, k // p, m) != 1
