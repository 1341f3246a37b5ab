"""Primitive divisors of t^n - (e1)^n and the generalized primitive divisor q*.

A prime r is a primitive divisor of t^n - (e1)^n exactly when the
multiplicative order of e*t modulo r is n. Such primes divide the
cyclotomic value Phi_n(e*t) and never divide n, which is how they are
isolated below without factoring t^n - (e1)^n as a whole.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorize, is_prime, is_prime_power, multiplicative_order


class Status(str, enum.Enum):
    PRIME = "Prime"
    GENERALIZED = "GeneralizedValue"
    UNDEFINED = "Undefined"


@dataclass(frozen=True)
class SignedPair:
    t: int
    n: int
    epsilon: int  # +1 or -1

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon}")
        if self.t < 2 or self.n < 1:
            raise ValueError(f"need t >= 2 and n >= 1, got t={self.t}, n={self.n}")

    @property
    def sign(self) -> str:
        return "+" if self.epsilon == 1 else "-"

    def value(self, s: int | None = None) -> int:
        """t^s - (e1)^s, with s defaulting to n."""
        s = self.n if s is None else s
        return self.t**s - self.epsilon**s


@dataclass(frozen=True)
class PrimDivResult:
    status: Status
    value: int | None = None
    case_tag: str | None = None

    @property
    def defined(self) -> bool:
        return self.status is not Status.UNDEFINED

    def to_json(self) -> dict:
        return {"status": self.status.value, "value": self.value, "case": self.case_tag}


def _pm(e: int) -> str:
    return "+" if e == 1 else "-"


def cyclotomic_value(n: int, a: int) -> int:
    """Phi_n(a) for an integer a, via the Moebius product over divisors of n."""
    num, den = 1, 1
    for d in factorize(n).divisors():
        mu = _moebius(n // d)
        if mu == 1:
            num *= a**d - 1
        elif mu == -1:
            den *= a**d - 1
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def _moebius(k: int) -> int:
    fac = factorize(k).factors
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def primitive_part(t: int, n: int, epsilon: int) -> int:
    """Product of all primitive prime divisors of t^n - (e1)^n, with multiplicity."""
    value = abs(cyclotomic_value(n, epsilon * t))
    for p in factorize(n).primes:
        while value % p == 0:
            value //= p
    return value


def has_primitive_divisor(t: int, n: int, epsilon: int) -> bool:
    return primitive_part(t, n, epsilon) > 1


def is_primitive_divisor(r: int, t: int, n: int, epsilon: int) -> bool:
    if not is_prime(r) or t % r == 0:
        return False
    return multiplicative_order(epsilon * t, r) == n


def zsigmondy_exception(t: int, n: int, epsilon: int) -> str | None:
    """Which clause of the signed Zsigmondy exception list matches, if any."""
    if epsilon == 1 and n == 6 and t == 2:
        return "exception_i"
    if epsilon == 1 and n == 2 and _is_two_power(t + 1) and t + 1 >= 4:
        return "exception_ii"
    if epsilon == -1 and n == 3 and t == 2:
        return "exception_iii"
    if epsilon == -1 and n == 2 and _is_two_power(t - 1):
        return "exception_iv"
    return None


def _is_two_power(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def primitive_divisor(pair: SignedPair) -> PrimDivResult:
    """Largest primitive prime divisor, or the matching exception tag."""
    if pair.n < 2:
        raise ValueError("primitive_divisor needs n >= 2")
    value = _largest_primitive(pair.t, pair.n, pair.epsilon)
    if value is not None:
        return PrimDivResult(Status.PRIME, value)
    tag = zsigmondy_exception(pair.t, pair.n, pair.epsilon)
    if tag is None:
        raise AssertionError(f"no primitive divisor and no exception clause for {pair}")
    return PrimDivResult(Status.UNDEFINED, None, tag)


@lru_cache(maxsize=None)
def _largest_primitive(t: int, n: int, epsilon: int) -> int | None:
    part = primitive_part(t, n, epsilon)
    if part == 1:
        return None
    return factorize(part).largest_prime()


UNDEFINED_TRIPLES = frozenset({(-1, 2, 2), (-1, 2, 3), (-1, 3, 2)})


@lru_cache(maxsize=None)
def gen_primitive_divisor(q: int, n: int, epsilon: int) -> PrimDivResult:
    """Generalized primitive divisor q*_[en] of a prime power q."""
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    if n < 1:
        raise ValueError("n must be >= 1")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if n == 1:
        # q - e1 has no smaller index to avoid; only q - 1 = 1 fails
        if q - epsilon == 1:
            return PrimDivResult(Status.UNDEFINED, None, "n1_unit")
        return PrimDivResult(Status.PRIME, factorize(q - epsilon).largest_prime())
    value = _largest_primitive(q, n, epsilon)
    if value is not None:
        return PrimDivResult(Status.PRIME, value)
    if (epsilon, n, q) == (1, 6, 2):
        return PrimDivResult(Status.GENERALIZED, 9, "qstar_9")
    if epsilon == 1 and n == 2 and _is_two_power(q + 1) and q + 1 >= 4:
        return PrimDivResult(Status.GENERALIZED, q + 1, "qstar_2l_plus")
    if epsilon == -1 and n == 2 and _is_two_power(q - 1) and q - 1 >= 4:
        return PrimDivResult(Status.GENERALIZED, q - 1, "qstar_2l_minus")
    if (epsilon, n, q) in UNDEFINED_TRIPLES:
        return PrimDivResult(Status.UNDEFINED, None, "undefined_triple")
    raise AssertionError(f"q*_[{_pm(epsilon)}{n}]({q}) fell through every clause")


def qstar(q: int, n: int, epsilon: int) -> int:
    """Value of q*_[en]; raises ``UndefinedDivisor`` on the undefined triples."""
    res = gen_primitive_divisor(q, n, epsilon)
    if not res.defined:
        raise UndefinedDivisor(q, n, epsilon)
    return res.value


class UndefinedDivisor(ValueError):
    def __init__(self, q: int, n: int, epsilon: int):
        super().__init__(f"q*_[{_pm(epsilon)}{n}]({q}) is not defined")
        self.q, self.n, self.epsilon = q, n, epsilon


def exceptional_gcd_shape(q: int, n: int, epsilon: int) -> bool:
    """(e,n,q) = (+,2,2^l-1) or (-,2,2^l+1): the shapes where gcd(r, q-e1) may exceed 1."""
    if n != 2:
        return False
    if epsilon == 1:
        return _is_two_power(q + 1)
    return _is_two_power(q - 1)


@dataclass
class DivReport:
    q: int
    n: int
    epsilon: int
    r: int
    failures: list[str]
    skipped: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_divisibility(q: int, n: int, epsilon: int, s_max: int) -> DivReport:
    """Check the divisibility properties of r = q*_[en] by direct arithmetic.

    (i)   r | q^s - (e1)^s  iff  n | s, for 1 <= s <= s_max
    (ii)  gcd(r, q - e1) = 1 for n > 1 outside the two 2-power shapes
    (iii) r | (q^n - (e1)^n) / (q^{n/s} - (e1)^{n/s}) for s | n, s > 1,
          except (e,n,s,q) = (+,6,3,2)
    """
    r = qstar(q, n, epsilon)
    failures, skipped = [], []
    for s in range(1, s_max + 1):
        divides = (q**s - epsilon**s) % r == 0
        if divides != (s % n == 0):
            failures.append(f"(i) s={s}: r | q^s-(e1)^s is {divides}")
    if n > 1:
        if exceptional_gcd_shape(q, n, epsilon):
            skipped.append("(ii) exceptional 2-power shape")
        elif math.gcd(r, q - epsilon) != 1:
            failures.append(f"(ii) gcd(r, q-e1) = {math.gcd(r, q - epsilon)}")
    for s in range(2, n + 1):
        if n % s:
            continue
        if (epsilon, n, s, q) == (1, 6, 3, 2):
            skipped.append("(iii) (+,6,3,2)")
            continue
        num = q**n - epsilon**n
        den = q ** (n // s) - epsilon ** (n // s)
        if num % den or (num // den) % r:
            failures.append(f"(iii) s={s}")
    return DivReport(q, n, epsilon, r, failures, skipped)
