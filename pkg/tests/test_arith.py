import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coverorders.arith import (
    MR_DETERMINISTIC_BOUND,
    PRIM_RULES,
    carmichael,
    factorize,
    is_prime,
    is_prime_power,
    largest_prime_factor,
    multiplicative_order,
    prime_power,
    primes_in_interval,
    primes_up_to,
    verify_prime_intervals,
)


def test_primes_up_to_matches_sympy():
    assert primes_up_to(5000) == list(sympy.primerange(2, 5001))


def test_is_prime_small_range():
    assert [n for n in range(-5, 3000) if is_prime(n)] == list(sympy.primerange(2, 3000))


@given(st.integers(min_value=2, max_value=2**80))
@settings(max_examples=300)
def test_is_prime_agrees_with_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_around_deterministic_bound():
    # both sides of the switch to the probabilistic test
    for n in range(MR_DETERMINISTIC_BOUND - 200, MR_DETERMINISTIC_BOUND + 200):
        assert is_prime(n) == sympy.isprime(n)
    assert is_prime(2**89 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321,
              3825123056546413051):
        assert not is_prime(n)


def test_factorize_examples():
    assert dict(factorize(1)) == {}
    assert dict(factorize(63)) == {3: 2, 7: 1}
    assert dict(factorize(1023)) == {3: 1, 11: 1, 31: 1}


@given(st.integers(min_value=1, max_value=10**18))
@settings(max_examples=200)
def test_factorize_is_a_prime_factorization(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(is_prime(p) and e >= 1 for p, e in fac)


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_factorize_is_multiplicative(a, b):
    if math.gcd(a, b) != 1:
        return
    merged = dict(factorize(a))
    merged.update(dict(factorize(b)))
    assert merged == dict(factorize(a * b))


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)


def test_largest_prime_factor():
    assert largest_prime_factor(1) is None
    assert largest_prime_factor(2**10 - 1) == 31


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(2) == (2, 1)
    with pytest.raises(ValueError):
        prime_power(12)
    assert [q for q in range(1, 50) if is_prime_power(q)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
    ]


def brute_order(a, m):
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


@given(st.integers(min_value=2, max_value=10**4), st.integers(min_value=2, max_value=3000))
def test_multiplicative_order_brute_force(a, m):
    if math.gcd(a, m) != 1:
        with pytest.raises(ValueError):
            multiplicative_order(a, m)
    else:
        assert multiplicative_order(a, m) == brute_order(a, m)


def test_multiplicative_order_negative_base():
    # -2 = 7 mod 9 and 7^3 = 343 = 1 mod 9; -2 = 3 mod 5 has order 4
    assert multiplicative_order(-2, 9) == 3
    assert multiplicative_order(-2, 5) == 4


def test_carmichael_is_unit_group_exponent():
    for n in range(2, 400):
        units = [a for a in range(1, n) if math.gcd(a, n) == 1]
        assert carmichael(n) == math.lcm(*(brute_order(a, n) for a in units))


def test_primes_in_interval_examples():
    assert primes_in_interval(Fraction(22, 3), 11) == [11]
    assert primes_in_interval(14, 20, open_hi=True) == [17, 19]
    assert primes_in_interval(3, 4, open_hi=True) == []
    assert primes_in_interval(2, 3, open_lo=False, open_hi=False) == [2, 3]
    with pytest.raises(ValueError):
        primes_in_interval(5, 5)


@given(st.fractions(min_value=0, max_value=2000), st.fractions(min_value=0, max_value=300),
       st.booleans(), st.booleans())
def test_primes_in_interval_agrees_with_filter(lo, width, open_lo, open_hi):
    hi = lo + width
    if not lo < hi:
        return
    expect = [p for p in sympy.primerange(0, int(hi) + 2)
              if (p > lo if open_lo else p >= lo) and (p < hi if open_hi else p <= hi)]
    assert primes_in_interval(lo, hi, open_lo, open_hi) == expect


@pytest.mark.parametrize("part", sorted(PRIM_RULES))
def test_prime_interval_bounds_hold_for_all_real_x(part):
    report = verify_prime_intervals(part, 1000, exact=True)
    assert report.ok, report.violations[:5]
    assert report.samples > 1000


def test_prime_interval_start_points():
    assert PRIM_RULES["i"].x_start == 22 and not PRIM_RULES["i"].start_open
    assert PRIM_RULES["ii"].x_start == 57
    # strict bound x > 45
    assert PRIM_RULES["iii"].x_start == 45 and PRIM_RULES["iii"].start_open
    assert PRIM_RULES["iv"].primes_at(28) == [17, 19]


def test_prime_interval_bounds_are_sharp_below_start():
    # part i fails somewhere below its start point
    rule = PRIM_RULES["i"]
    assert any(len(rule.primes_at(Fraction(k, 2))) < 1 for k in range(2, 44))
