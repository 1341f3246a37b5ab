"""Finite fields GF(p^m) with elements encoded as integers.

An element sum(c_i x^i) (c_i in 0..p-1, reduced modulo the field's
modulus) is encoded as sum(c_i p^i). The prime field is embedded as
0..p-1. Multiplication goes through log/exp tables built from a
primitive element; fields with q <= FULL_TABLE_MAX also get full
addition and multiplication tables for vectorized matrix arithmetic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from sympy import Poly, symbols

from ..arith import factorize, is_prime

FULL_TABLE_MAX = 256
FIELD_SIZE_MAX = 1 << 20

_X = symbols("x")


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility over F_p of the polynomial with coefficients low to high."""
    if len(coeffs) <= 2:
        return len(coeffs) == 2 and coeffs[-1] % p != 0
    return bool(Poly(list(reversed(coeffs)), _X, modulus=p).is_irreducible)


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m, coefficients low to high.

    Candidates are ordered by (c_0, c_1, ..., c_{m-1}) with c_0 most significant.
    """
    for low in itertools.product(range(p), repeat=m):
        coeffs = low + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no irreducible of degree {m} over F_{p}")


class GF:
    """The field with p^m elements."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p) or m < 1:
            raise ValueError(f"bad field parameters p={p}, m={m}")
        self.p, self.m = p, m
        self.q = p**m
        if self.q > FIELD_SIZE_MAX:
            raise ValueError(f"field of size {self.q} exceeds {FIELD_SIZE_MAX}")
        self.modulus = least_irreducible(p, m)
        self._pw = [p**i for i in range(m)]
        self.digits = self._digit_table()
        self._build_log_tables()
        self.add_table = self.mul_table = None
        if self.q <= FULL_TABLE_MAX:
            self._build_full_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    # encoding helpers
    def _digit_table(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.m), dtype=np.int64)
        for i in range(self.m):
            out[:, i] = codes % self.p
            codes //= self.p
        return out

    def encode(self, coeffs) -> int:
        return sum(int(c) % self.p * w for c, w in zip(coeffs, self._pw))

    def _polymul(self, a: int, b: int) -> int:
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.digits[a], self.digits[b]
        prod = [0] * (2 * m - 1)
        for i in range(m):
            if da[i]:
                for j in range(m):
                    prod[i + j] += int(da[i]) * int(db[j])
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m + 1):
                    prod[k - m + i] -= c * mod[i]
        return self.encode(prod[:m])

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        if q == 2:
            self.gen = 1
        else:
            primes = factorize(order).primes
            for g in range(2, q) if self.m > 1 else range(2, q):
                if all(self._slow_pow(g, order // r) != 1 for r in primes):
                    self.gen = g
                    break
        exp = np.zeros(2 * order + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._polymul(x, self.gen)
        exp[order : 2 * order] = exp[:order]
        self.exp, self.log = exp, log

    def _slow_pow(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self._polymul(out, base)
            base = self._polymul(base, base)
            e >>= 1
        return out

    def _build_full_tables(self):
        q, p = self.q, self.p
        d = self.digits
        w = np.array(self._pw, dtype=np.int64)
        self.add_table = (((d[:, None, :] + d[None, :, :]) % p) @ w).astype(np.int64)
        self.neg_table = (((-d) % p) @ w).astype(np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        la = self.log[nz]
        mul[1:, 1:] = self.exp[la[:, None] + la[None, :]]
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self.exp[(self.q - 1 - la) % (self.q - 1)]
        self.inv_table = inv

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self.encode(self.digits[a] + self.digits[b])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.encode(-self.digits[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        return self.pow(a, self.p**k)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(self.q - 1, int(self.log[a]))

    def element_of_order(self, r: int) -> int:
        if (self.q - 1) % r:
            raise ValueError(f"no element of order {r} in {self}")
        return int(self.exp[(self.q - 1) // r])

    def elements(self) -> range:
        return range(self.q)

    def prime_basis(self) -> list[int]:
        """x^0, ..., x^(m-1): an F_p-basis."""
        return list(self._pw)

    # vectorized helpers (full-table fields)
    def vmul(self, a, b):
        return self.mul_table[a, b]

    def vadd(self, a, b):
        return self.add_table[a, b]


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> GF:
    return GF(p, m)


def field_of_size(q: int) -> GF:
    from ..arith import prime_power

    p, m = prime_power(q)
    return make_field(p, m)


class Embedding:
    """An embedding of a small field F into a larger field K of the same characteristic."""

    def __init__(self, small: GF, big: GF):
        if small.p != big.p or big.m % small.m:
            raise ValueError(f"{small} does not embed in {big}")
        self.small, self.big = small, big
        # image of the small field's generator x: a root of its modulus in K
        alpha = None
        for a in range(big.q):
            if self._eval_modulus(a) == 0:
                alpha = a
                break
        if small.m == 1:
            alpha = 0
        assert alpha is not None
        powers = [1]
        for _ in range(small.m - 1):
            powers.append(big.mul(powers[-1], alpha))
        self.image = []
        for c in range(small.q):
            acc = 0
            for i, digit in enumerate(small.digits[c]):
                for _ in range(int(digit)):
                    acc = big.add(acc, powers[i])
            self.image.append(acc)
        self.preimage = {v: c for c, v in enumerate(self.image)}
        assert len(self.preimage) == small.q

    def _eval_modulus(self, a: int) -> int:
        big = self.big
        acc = 0
        for c in reversed(self.small.modulus):
            acc = big.add(big.mul(acc, a), c)
        return acc

    def __call__(self, c: int) -> int:
        return self.image[c]

    def back(self, v: int) -> int:
        try:
            return self.preimage[v]
        except KeyError:
            raise ValueError(f"{v} is not in the image of {self.small}") from None
