"""Exact integer arithmetic: primality, factorization, prime intervals.

Everything here works on Python ints (arbitrary precision) and
``fractions.Fraction`` bounds; no floats are used anywhere.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from sympy import factorint, n_order, reduced_totient
from sympy.ntheory.primetest import isprime as bpsw_isprime

# Bases 2..41 make Miller-Rabin deterministic below this bound
# (Sorenson & Webster 2015).
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES: list[int] = []


def primes_up_to(limit: int) -> list[int]:
    """All primes p <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = primes_up_to(10_000)
_SMALL_PRIME_SET = frozenset(_SMALL_PRIMES)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic Miller-Rabin below ``MR_DETERMINISTIC_BOUND``; above it,
    sympy's BPSW test (no known counterexample) is used.
    """
    if n < 2:
        return False
    if n <= _SMALL_PRIMES[-1]:
        return n in _SMALL_PRIME_SET
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    if n < MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return bool(bpsw_isprime(n))


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        prod = 1
        for p, e in self.factors.items():
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> list[int]:
        return sorted(self.factors)

    def largest_prime(self) -> int | None:
        return max(self.factors) if self.factors else None

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in sorted(self.factors.items()):
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.factors.items()))


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1 (sympy's factorint)."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    fac = Factorization(n, dict(_factor_cached(n)))
    if not all(is_prime(p) for p in fac.factors):
        raise AssertionError(f"factorint returned a composite factor of {n}")
    return fac


def largest_prime_factor(n: int) -> int | None:
    return factorize(n).largest_prime()


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac.factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, m),) = fac.factors.items()
    return p, m


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


def multiplicative_order(a: int, modulus: int) -> int:
    """Least k >= 1 with a**k == 1 (mod modulus); requires gcd(a, modulus) = 1."""
    if modulus == 1:
        return 1
    a %= modulus
    if math.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit modulo {modulus}")
    return int(n_order(a, modulus))


def carmichael(n: int) -> int:
    """Exponent of the unit group modulo n."""
    return int(reduced_totient(n))


# --- primes in intervals --------------------------------------------------

@lru_cache(maxsize=8)
def _prime_table(limit: int) -> tuple[int, ...]:
    return tuple(primes_up_to(limit))


def _primes_through(limit: int) -> tuple[int, ...]:
    size = 1024
    while size < limit:
        size *= 2
    return _prime_table(size)


def primes_in_interval(lo, hi, open_lo: bool = True, open_hi: bool = False) -> list[int]:
    """Primes in the interval with rational endpoints lo < hi.

    ``open_lo``/``open_hi`` select strict inequalities; the default is the
    half-open interval (lo, hi].
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval: lo={lo} >= hi={hi}")
    if hi < 2:
        return []
    table = _primes_through(math.floor(hi) + 1)
    # smallest integer admissible at each end
    if open_lo:
        first = math.floor(lo) + 1
    else:
        first = math.ceil(lo)
    if open_hi:
        last = math.ceil(hi) - 1
    else:
        last = math.floor(hi)
    i = bisect.bisect_left(table, first)
    j = bisect.bisect_right(table, last)
    return list(table[i:j])


@dataclass(frozen=True)
class PrimIntervalRule:
    """One part of the prime-in-interval bounds.

    The interval is (lo_a*x + lo_b, hi_a*x + hi_b] with the given openness,
    claimed to hold at least ``min_count`` primes for every real x past
    ``x_start`` (inclusive unless ``start_open``).
    """

    part: str
    lo_a: Fraction
    lo_b: Fraction
    hi_a: Fraction
    hi_b: Fraction
    open_lo: bool
    open_hi: bool
    min_count: int
    x_start: Fraction
    start_open: bool

    def interval(self, x) -> tuple[Fraction, Fraction]:
        x = Fraction(x)
        return self.lo_a * x + self.lo_b, self.hi_a * x + self.hi_b

    def primes_at(self, x) -> list[int]:
        lo, hi = self.interval(x)
        if not lo < hi:
            return []
        return primes_in_interval(lo, hi, self.open_lo, self.open_hi)


F = Fraction
PRIM_RULES: dict[str, PrimIntervalRule] = {
    "i": PrimIntervalRule("i", F(1, 3), F(0), F(1, 2), F(0), True, False, 1, F(22), False),
    "ii": PrimIntervalRule("ii", F(2, 3), F(0), F(1), F(-16), True, False, 1, F(57), False),
    "iii": PrimIntervalRule("iii", F(3, 4), F(0), F(1), F(-8), True, True, 1, F(45), True),
    "iv": PrimIntervalRule("iv", F(1, 2), F(0), F(1), F(-8), True, True, 2, F(27), True),
}
del F


@dataclass
class PrimReport:
    part: str
    x_max: int
    samples: int
    violations: list[tuple[Fraction, list[int]]]

    @property
    def ok(self) -> bool:
        return not self.violations


def _breakpoints(rule: PrimIntervalRule, x_end: Fraction) -> list[Fraction]:
    """x values where an interval endpoint sits exactly on a prime."""
    top = math.floor(max(rule.hi_a * x_end + rule.hi_b, rule.lo_a * x_end + rule.lo_b)) + 1
    points = set()
    for p in _primes_through(top):
        if p > top:
            break
        for a, b in ((rule.lo_a, rule.lo_b), (rule.hi_a, rule.hi_b)):
            x = (p - b) / a
            if rule.x_start <= x <= x_end:
                points.add(x)
    return sorted(points)


def verify_prime_intervals(part: str, x_max: int, exact: bool = True) -> PrimReport:
    """Check one part of the prime-in-interval bounds for x up to x_max.

    Samples every integer and half-integer x in range. With ``exact`` the
    check also covers all real x: the prime set of the interval only changes
    where an endpoint crosses a prime, so testing each such breakpoint plus
    one point strictly between consecutive breakpoints is exhaustive.
    """
    rule = PRIM_RULES[part]
    x_end = Fraction(x_max)
    samples: set[Fraction] = set()
    k = math.ceil(rule.x_start * 2)
    while Fraction(k, 2) <= x_end:
        x = Fraction(k, 2)
        if x > rule.x_start or (x == rule.x_start and not rule.start_open):
            samples.add(x)
        k += 1
    if exact:
        bps = _breakpoints(rule, x_end)
        fence = sorted(set(bps) | {rule.x_start, x_end})
        for a, b in zip(fence, fence[1:]):
            samples.add((a + b) / 2)
        for x in fence:
            if x > rule.x_start or (x == rule.x_start and not rule.start_open):
                samples.add(x)
    violations = []
    for x in sorted(samples):
        found = rule.primes_at(x)
        if len(found) < rule.min_count:
            violations.append((x, found))
    return PrimReport(part, x_max, len(samples), violations)
