"""Element-order arithmetic for SL_n^e(q) and L_n^e(q).

The exclusion certificates here rest on a shape constraint for
centralizers of semisimple elements: such a centralizer is described by
a multipartition, a multiset of pairs (i, mu) with sum(i * mu) = n. A
pair contributes a cyclic torus factor of order q^mu - (e1)^mu and, when
i >= 2, a component of type A_{i-1}. An element of order p^(t+1) * r with
r coprime to p needs a component with i >= p^t + 1, and each prime power
r_f exactly dividing r needs some mu divisible by the order of eq modulo
r_f. If no multipartition satisfies both, the order is impossible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import factorize, multiplicative_order, prime_power
from .primdiv import gen_primitive_divisor

MULTIPARTITION_N_MAX = 12


class SpectraError(ValueError):
    pass


@dataclass(frozen=True)
class GroupParams:
    epsilon: int
    n: int
    q: int
    p: int = field(init=False)
    m: int = field(init=False)
    d: int = field(init=False)

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise SpectraError("epsilon must be +1 or -1")
        if self.n < 2:
            raise SpectraError("n must be at least 2")
        try:
            p, m = prime_power(self.q)
        except ValueError as exc:
            raise SpectraError(str(exc)) from None
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "d", math.gcd(self.n, self.q - self.epsilon))

    @property
    def sign(self) -> str:
        return "+" if self.epsilon == 1 else "-"

    @property
    def name(self) -> str:
        return f"{'SL' if self.epsilon == 1 else 'SU'}_{self.n}({self.q})"

    @property
    def simple_name(self) -> str:
        return f"{'L' if self.epsilon == 1 else 'U'}_{self.n}({self.q})"

    def is_simple(self) -> bool:
        if self.epsilon == 1:
            return (self.n, self.q) not in ((2, 2), (2, 3))
        return self.n >= 3 and (self.n, self.q) != (3, 2)

    def order_sl(self) -> int:
        """|SL_n^e(q)|."""
        q, e = self.q, self.epsilon
        out = q ** (self.n * (self.n - 1) // 2)
        for i in range(2, self.n + 1):
            out *= q**i - e**i
        return out

    def order_simple(self) -> int:
        return self.order_sl() // self.d

    def to_json(self) -> dict:
        return {"epsilon": self.sign, "n": self.n, "q": self.q, "p": self.p, "m": self.m, "d": self.d}


def sl(n: int, q: int) -> GroupParams:
    return GroupParams(1, n, q)


def su(n: int, q: int) -> GroupParams:
    return GroupParams(-1, n, q)


def maximal_orders(params: GroupParams) -> tuple[int, int]:
    """The two maximal-by-divisibility orders (q^n-(e1)^n)/(d(q-e1)) and (q^(n-1)-(e1)^(n-1))/d."""
    if not params.is_simple():
        raise SpectraError(f"{params.simple_name} is not simple")
    q, n, e, d = params.q, params.n, params.epsilon, params.d
    a1, rem1 = divmod(q**n - e**n, d * (q - e))
    a2, rem2 = divmod(q ** (n - 1) - e ** (n - 1), d)
    assert rem1 == 0 and rem2 == 0
    return a1, a2


def has_unipotent_order(params: GroupParams, t: int) -> bool:
    """True iff SL_n^e(q) has an element of order p^(t+1)."""
    if t < 0:
        raise SpectraError("t must be >= 0")
    return params.n >= params.p**t + 1


# --- multipartitions ------------------------------------------------------

@lru_cache(maxsize=64)
def multipartitions(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All multisets of pairs (i, mu), i, mu >= 1, with sum(i * mu) = n.

    Each multiset is a non-increasing tuple of pairs.
    """
    pairs = sorted(((i, mu) for i in range(1, n + 1) for mu in range(1, n // i + 1)), reverse=True)
    out = []

    def rec(start: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(pairs)):
            i, mu = pairs[k]
            if i * mu <= left:
                acc.append(pairs[k])
                rec(k, left - i * mu, acc)
                acc.pop()

    rec(0, n, [])
    return tuple(out)


@dataclass
class FeasibilityResult:
    feasible: bool
    examined: int
    witness: tuple[tuple[int, int], ...] | None


def multipartition_search(n: int, p: int, t: int, b_list, allow_large: bool = False) -> FeasibilityResult:
    if n > MULTIPARTITION_N_MAX and not allow_large:
        raise SpectraError(f"multipartition search for n={n} > {MULTIPARTITION_N_MAX} needs allow_large")
    bound = p**t + 1
    examined = 0
    for mp in multipartitions(n):
        examined += 1
        if not any(i >= bound for i, _ in mp):
            continue
        if all(any(mu % b == 0 for _, mu in mp) for b in b_list):
            return FeasibilityResult(True, examined, mp)
    return FeasibilityResult(False, examined, None)


def multipartition_feasible(params: GroupParams, t: int, b_list, r_list=None, allow_large: bool = False) -> bool:
    """Whether some centralizer shape could host an element of order p^(t+1) * prod(r).

    False is a proof that no such element exists; True proves nothing.
    """
    return multipartition_search(params.n, params.p, t, b_list, allow_large).feasible


# --- certificates ---------------------------------------------------------

@dataclass(frozen=True)
class PmaxCertificate:
    params: GroupParams
    s: int
    t: int | None
    b_list: tuple[int, ...]
    r_list: tuple[int, ...]
    excluded_order: int
    search_trace: int

    @property
    def semisimple_order(self) -> int:
        return math.prod(self.r_list)

    def to_json(self) -> dict:
        return {
            "group": self.params.to_json(),
            "s": self.s,
            "t": self.t,
            "b_list": list(self.b_list),
            "r_list": list(self.r_list),
            "excluded_order": self.excluded_order,
            "search_trace": self.search_trace,
        }


def certificate_violations(params: GroupParams, s: int, b_list) -> list[str]:
    bad = []
    p = params.p
    if s != 0:
        t = _log_exact(s, p)
        if t is None:
            bad.append(f"s={s} is neither 0 nor a power of p={p}")
    if s + sum(b_list) != params.n:
        bad.append(f"s + sum(b) = {s + sum(b_list)} != n = {params.n}")
    if any(b <= 1 for b in b_list):
        bad.append("every b must exceed 1")
    for a in range(len(b_list)):
        for c in range(a + 1, len(b_list)):
            if math.gcd(b_list[a], b_list[c]) != 1:
                bad.append(f"b values {b_list[a]}, {b_list[c]} not coprime")
    if (params.epsilon, params.q) == (-1, 2) and any(b in (2, 3) for b in b_list):
        bad.append("(e,q) = (-,2) forbids b in {2,3}")
    if (params.epsilon, params.q) == (-1, 3) and 2 in b_list:
        bad.append("(e,q) = (-,3) forbids b = 2")
    return bad


def _log_exact(s: int, p: int) -> int | None:
    t = 0
    while s % p == 0:
        s //= p
        t += 1
    return t if s == 1 else None


def build_pmax_certificate(params: GroupParams, s: int, b_list, allow_large: bool = False) -> PmaxCertificate:
    """Certify p^(t+1) * prod(q*_[e b]) is not an element order of SL_n^e(q)."""
    b_list = tuple(b_list)
    bad = certificate_violations(params, s, b_list)
    if bad:
        raise SpectraError("; ".join(bad))
    t = 0 if s == 0 else _log_exact(s, params.p)
    r_list = []
    for b in b_list:
        res = gen_primitive_divisor(params.q, b, params.epsilon)
        if not res.defined:
            raise SpectraError(f"q*_[{params.sign}{b}]({params.q}) undefined")
        r_list.append(res.value)
    excluded = params.p ** (t + 1) * math.prod(r_list)
    # orders of eq modulo each r, which is what the shape argument actually uses
    search = multipartition_search(params.n, params.p, t, _eq_orders(params, r_list), allow_large)
    if search.feasible:
        raise SpectraError(f"multipartition search found a witness {search.witness}; no exclusion")
    return PmaxCertificate(params, s, t if s else None, b_list, tuple(r_list), excluded, search.examined)


def _eq_orders(params: GroupParams, r_list) -> list[int]:
    eq = params.epsilon * params.q
    return [multiplicative_order(eq, r) for r in r_list]


@dataclass(frozen=True)
class OrderCertificate:
    """Exclusion of p^(t+1) * order, with b taken from the prime-power factors of order."""

    params: GroupParams
    order: int
    t: int
    prime_powers: tuple[int, ...]
    b_list: tuple[int, ...]
    excluded_order: int
    search_trace: int

    def to_json(self) -> dict:
        return {
            "group": self.params.to_json(),
            "order": self.order,
            "t": self.t,
            "prime_powers": list(self.prime_powers),
            "b_list": list(self.b_list),
            "excluded_order": self.excluded_order,
            "search_trace": self.search_trace,
        }


def order_certificate(params: GroupParams, order: int, t: int = 0, allow_large: bool = False) -> OrderCertificate:
    """Prove p^(t+1) * order is not in the spectrum of SL_n^e(q), or raise."""
    if order < 1 or order % params.p == 0:
        raise SpectraError("order must be a positive integer coprime to p")
    eq = params.epsilon * params.q
    powers = tuple(r**a for r, a in factorize(order))
    b_list = tuple(multiplicative_order(eq, rp) for rp in powers)
    search = multipartition_search(params.n, params.p, t, b_list, allow_large)
    if search.feasible:
        raise SpectraError(f"no exclusion: multipartition {search.witness} is compatible")
    return OrderCertificate(params, order, t, powers, b_list, params.p ** (t + 1) * order, search.examined)


def order_in_small_spectrum(params: GroupParams, x: int, cap: int | None = None) -> bool:
    """Membership of x in the spectrum of SL_n^e(q), by full enumeration."""
    from .matgrp.groups import group_spectrum

    return x in group_spectrum(params, cap=cap)
