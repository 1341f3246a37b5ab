"""Coprime decompositions n = n_1 + ... + n_k with matching decompositions of j.

Two constructions are provided:

* ``decompose_i`` gives one decomposition of n that serves every j at once
  (``restrict_i`` produces the j-side), with all prime factors of the parts
  at most (n+1)/2.
* ``decompose_ii`` builds a decomposition depending on j, avoiding parts 2
  and 3, from the small tables below for n <= 112 and by prime-gap
  recursion beyond.

Parts are kept in construction order. A ``RestrictionMap`` records, for
each summand of j, the index of the part of n it is mapped to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import largest_prime_factor, primes_in_interval


class DecompositionError(ValueError):
    pass


class ExcludedPair(DecompositionError):
    """(n, j) is one of the pairs the kind-II construction cannot serve."""


@dataclass(frozen=True)
class Decomposition:
    n: int
    parts: tuple[int, ...]
    kind: str  # "I", "II", or "special" for the hand-built elements

    def to_json(self) -> dict:
        return {"n": self.n, "parts": list(self.parts), "kind": self.kind}


@dataclass(frozen=True)
class RestrictionMap:
    j: int
    j_parts: tuple[int, ...]
    eta: tuple[int, ...]  # eta[i] = index into Decomposition.parts

    def to_json(self, dec: Decomposition | None = None) -> dict:
        out = {"j": self.j, "j_parts": list(self.j_parts), "eta": list(self.eta)}
        if dec is not None:
            out["eta_values"] = [dec.parts[i] for i in self.eta]
        return out


EXCLUDED_II = frozenset({(6, 3), (8, 3), (8, 5)})
WHOLE_PART_PAIRS = frozenset({(8, 4), (16, 6), (16, 10)})

# (n, j) -> ([n-j] parts, [j] parts); exceptional pairs with 2j <= n <= 112
EXPLICIT_PAIRS: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]] = {
    (21, 6): ((4, 11), (1, 5)),
    (25, 10): ((4, 11), (1, 9)),
    (34, 12): ((22,), (5, 7)),
    (36, 15): ((21,), (4, 11)),
    (45, 12): ((33,), (5, 7)),
    (46, 6): ((11, 29), (6,)),
    (46, 10): ((7, 29), (10,)),
    (49, 21): ((5, 23), (21,)),
    (51, 6): ((4, 41), (1, 5)),
    (51, 15): ((7, 29), (15,)),
    (52, 18): ((34,), (5, 13)),
    (55, 10): ((4, 41), (1, 9)),
    (55, 15): ((11, 29), (15,)),
    (55, 22): ((33,), (5, 17)),
    (57, 21): ((5, 31), (21,)),
    (64, 28): ((36,), (5, 23)),
    (66, 26): ((40,), (7, 19)),
    (69, 18): ((51,), (5, 13)),
    (70, 24): ((46,), (5, 19)),
    (76, 6): ((11, 59), (6,)),
    (76, 10): ((7, 59), (10,)),
    (76, 36): ((40,), (7, 29)),
    (78, 22): ((56,), (5, 17)),
    (81, 6): ((4, 71), (1, 5)),
    (81, 15): ((7, 59), (15,)),
    (81, 36): ((45,), (7, 29)),
    (85, 10): ((4, 71), (1, 9)),
    (85, 15): ((11, 59), (15,)),
    (85, 34): ((51,), (5, 29)),
    (85, 35): ((9, 41), (35,)),
    (85, 40): ((45,), (11, 29)),
    (88, 30): ((58,), (7, 23)),
    (91, 21): ((11, 59), (21,)),
    (91, 26): ((65,), (7, 19)),
    (91, 28): ((63,), (5, 23)),
    (91, 35): ((9, 47), (35,)),
    (91, 39): ((5, 47), (39,)),
    (92, 14): ((5, 73), (14,)),
    (93, 24): ((69,), (5, 19)),
    (96, 20): ((76,), (7, 13)),
    (99, 21): ((5, 73), (21,)),
    (99, 22): ((77,), (5, 17)),
    (99, 36): ((63,), (5, 31)),
    (100, 12): ((88,), (5, 7)),
    (100, 22): ((78,), (5, 17)),
    (100, 45): ((55,), (4, 41)),
    (105, 14): ((91,), (5, 9)),
    (105, 39): ((5, 61), (39,)),
    (105, 40): ((65,), (7, 33)),
    (106, 6): ((11, 89), (6,)),
    (106, 10): ((7, 89), (10,)),
    (106, 28): ((78,), (5, 23)),
    (106, 36): ((70,), (13, 23)),
    (106, 40): ((66,), (17, 23)),
    (106, 50): ((56,), (9, 41)),
    (111, 6): ((4, 101), (1, 5)),
    (111, 12): ((99,), (5, 7)),
    (111, 15): ((7, 89), (15,)),
    (111, 33): ((5, 73), (33,)),
    (111, 36): ((75,), (7, 29)),
    (111, 45): ((7, 59), (45,)),
}

# recursion primes for the kind-I base range: n = [n - r] + r
_BASE_STEP = {8: 3, 10: 5, 11: 5, 12: 5, 13: 7, 14: 7, 15: 7, 16: 7, 17: 7, 18: 7, 19: 5, 20: 3}
_BASE_PARTS = {5: (1, 4), 6: (1, 2, 3), 7: (1, 6), 9: (1, 8)}


# --- verification ---------------------------------------------------------

def verify_decomposition(dec: Decomposition, rmap: RestrictionMap | None = None) -> list[str]:
    """All invariant violations of ``dec`` (and ``rmap``); empty means valid."""
    bad = []
    parts = dec.parts
    if sum(parts) != dec.n:
        bad.append(f"parts sum to {sum(parts)}, not {dec.n}")
    if any(p < 1 for p in parts):
        bad.append("non-positive part")
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            if math.gcd(parts[a], parts[b]) != 1:
                bad.append(f"not pairwise coprime: {parts[a]}, {parts[b]}")
    if parts.count(1) > 1:
        bad.append("more than one part equals 1")
    if dec.kind == "II" and any(p in (2, 3) for p in parts):
        bad.append("forbidden part 2 or 3")
    if dec.kind == "I":
        big = [p for p in parts if p > 1]
        kappa = largest_prime_factor(math.prod(big)) if big else 1
        if 2 * kappa > dec.n + 1:
            bad.append(f"largest prime factor {kappa} exceeds (n+1)/2")
    if rmap is not None:
        bad.extend(_verify_rmap(dec, rmap))
    return bad


def _verify_rmap(dec: Decomposition, rmap: RestrictionMap) -> list[str]:
    bad = []
    if not 0 <= rmap.j <= dec.n:
        bad.append(f"j={rmap.j} out of range")
    if sum(rmap.j_parts) != rmap.j:
        bad.append(f"j-parts sum to {sum(rmap.j_parts)}, not {rmap.j}")
    if len(rmap.eta) != len(rmap.j_parts):
        bad.append("eta length mismatch")
        return bad
    if len(set(rmap.eta)) != len(rmap.eta):
        bad.append("eta not injective")
    for ji, idx in zip(rmap.j_parts, rmap.eta):
        if not 0 <= idx < len(dec.parts):
            bad.append(f"eta index {idx} out of range")
            continue
        target = dec.parts[idx]
        if ji < 1:
            bad.append("non-positive j-part")
        if ji > target:
            bad.append(f"(a) fails: {ji} > {target}")
        if target > 1 and math.gcd(ji, target) == 1:
            bad.append(f"(b) fails: gcd({ji}, {target}) = 1")
        if dec.kind == "II" and target == 6 and math.gcd(ji, target) == 3:
            bad.append(f"gcd({ji}, 6) = 3 with eta = 6")
    return bad


def _check(dec: Decomposition, rmap: RestrictionMap | None = None) -> None:
    bad = verify_decomposition(dec, rmap)
    if bad:
        raise DecompositionError(f"construction produced invalid output {dec} {rmap}: {bad}")


# --- kind I ---------------------------------------------------------------

def step_prime_i(n: int) -> int:
    """The prime r split off from n in the kind-I recursion (n >= 8, n != 9)."""
    if n in _BASE_STEP:
        return _BASE_STEP[n]
    if n < 21:
        raise ValueError(f"n={n} is a base case with no step prime")
    found = primes_in_interval(Fraction(n + 1, 3), Fraction(n + 1, 2), open_lo=True, open_hi=False)
    if not found:
        raise DecompositionError(f"no prime in ((n+1)/3, (n+1)/2] for n={n}")
    return found[-1]


def _parts_i(n: int) -> tuple[int, ...]:
    if n in _BASE_PARTS:
        return _BASE_PARTS[n]
    r = step_prime_i(n)
    return _parts_i(n - r) + (r,)


def decompose_i(n: int) -> Decomposition:
    if n < 5:
        raise DecompositionError(f"kind-I decomposition needs n >= 5, got {n}")
    return Decomposition(n, _parts_i(n), "I")


def _base_restrict(n: int, j: int) -> list[tuple[int, int]]:
    if n == 5:
        return {1: [(1, 0)], 2: [(2, 1)], 3: [(1, 0), (2, 1)], 4: [(4, 1)], 5: [(1, 0), (4, 1)]}[j]
    if n == 6:
        return {
            1: [(1, 0)], 2: [(2, 1)], 3: [(3, 2)],
            4: [(1, 0), (3, 2)], 5: [(2, 1), (3, 2)], 6: [(1, 0), (2, 1), (3, 2)],
        }[j]
    if n == 7:
        if j in (1,):
            return [(1, 0)]
        if j in (2, 3, 6):
            return [(j, 1)]
        return [(1, 0), (j - 1, 1)]  # 4 = 1+3, 5 = 1+4, 7 = 1+6
    if n == 9:
        if j == 1:
            return [(1, 0)]
        if j % 2 == 0:
            return [(j, 1)]
        return [(1, 0), (j - 1, 1)]
    raise AssertionError(n)


def _restrict_i(n: int, j: int) -> list[tuple[int, int]]:
    if n in _BASE_PARTS:
        return _base_restrict(n, j)
    r = step_prime_i(n)
    m = n - r
    if j <= m:
        return _restrict_i(m, j)
    r_index = len(_parts_i(m))
    rest = j - r
    head = _restrict_i(m, rest) if rest > 0 else []
    return head + [(r, r_index)]


def restrict_i(dec: Decomposition, j: int) -> RestrictionMap:
    """The j-side decomposition and injection for the kind-I decomposition of n."""
    if dec.kind != "I" or dec != decompose_i(dec.n):
        raise DecompositionError("restrict_i expects the canonical kind-I decomposition")
    if not 1 <= j <= dec.n:
        raise DecompositionError(f"j={j} outside 1..{dec.n}")
    pairs = _restrict_i(dec.n, j)
    return RestrictionMap(j, tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


# --- kind II --------------------------------------------------------------

def _small_j_row(n: int, j: int):
    """Closed-form row for small j (or j near n): (parts, [(j_part, part_index), ...]) or None."""
    odd = n % 2 == 1
    if j == 2:
        if odd:
            return (n - 1, 1), [(2, 0)]
        return (n,), [(2, 0)]
    if j == n - 2:
        if odd:
            return (1, n - 1), [(1, 0), (n - 3, 1)]
        return (n,), [(n - 2, 0)]
    if j == 3:
        if odd:
            return (1, n - 1), [(1, 0), (2, 1)]
        if n % 6 == 0:
            return (n,), [(3, 0)]
        if n % 6 == 2:
            return (1, 4, n - 5), [(1, 0), (2, 1)]
        return (n - 1, 1), [(3, 0)]
    if j == n - 3:
        if odd:
            return (n - 1, 1), [(n - 3, 0)]
        if n % 6 == 0:
            return (n,), [(n - 3, 0)]
        if n % 6 == 2:
            return (4, n - 5, 1), [(2, 0), (n - 5, 1)]
        return (1, n - 1), [(1, 0), (n - 4, 1)]
    if (n, j) in WHOLE_PART_PAIRS:
        return (n,), [(j, 0)]
    return None


def has_small_j_rule(n: int, j: int) -> bool:
    return j in (2, 3, n - 2, n - 3) or (n, j) in WHOLE_PART_PAIRS


def closed_forms(n: int, j: int) -> list[tuple[str, tuple[int, ...], list[int]]]:
    """Candidate decompositions 1)-3) for j <= n/2: (label, parts, j-indices)."""
    return [
        ("1", (j, n - j), [0]),
        ("2", (1, j - 1, n - j), [0, 1]),
        ("3", (j, 1, n - j - 1), [0]),
    ]


def _identity_map(parts: tuple[int, ...], idx: list[int]) -> RestrictionMap:
    return RestrictionMap(sum(parts[i] for i in idx), tuple(parts[i] for i in idx), tuple(idx))


def _form_valid(n: int, parts: tuple[int, ...], idx: list[int]) -> bool:
    if any(p < 1 for p in parts):
        return False
    dec = Decomposition(n, parts, "II")
    return not verify_decomposition(dec, _identity_map(parts, idx))


def _case_b(n: int, j: int, trace: list | None) -> tuple[tuple[int, ...], list[int], str]:
    """Recursive route: parts of n and the indices whose parts sum to j (eta identity)."""
    if has_small_j_rule(n, j) or (n, j) in EXCLUDED_II:
        raise DecompositionError(f"recursion reached a pair with its own rule ({n}, {j})")
    if j == n:
        parts, _, how = _case_b(n, 1, trace)
        return parts, list(range(len(parts))), how + "+all"
    if 2 * j > n:
        parts, idx, how = _case_b(n, n - j, trace)
        comp = [i for i in range(len(parts)) if i not in idx]
        return parts, comp, how + "+complement"
    if n <= 112:
        for label, parts, idx in closed_forms(n, j):
            if _form_valid(n, parts, idx):
                return parts, idx, f"form{label}"
        if (n, j) in EXPLICIT_PAIRS:
            nj, jp = EXPLICIT_PAIRS[(n, j)]
            parts = jp + nj
            return parts, list(range(len(jp))), "explicit"
        raise DecompositionError(f"no closed form or table entry for ({n}, {j})")
    if 5 * j <= 2 * n:
        return _step_b2(n, j, trace)
    return _step_b3(n, j, trace)


def _require(cond: bool, label: str, n: int, j: int) -> None:
    if not cond:
        raise DecompositionError(f"side condition {label} fails at (n, j) = ({n}, {j})")


def _step_b2(n, j, trace):
    m = n - j
    found = primes_in_interval(Fraction(2 * m, 3), m - 16, open_lo=True, open_hi=False)
    _require(bool(found), "prime r in (2m/3, m-16]", n, j)
    r = found[-1]
    _require(Fraction(2 * m, 3) < r <= m - 16, "prime r in (2m/3, m-16]", n, j)
    _require(j <= Fraction(2 * m, 3) < r, "j <= 2m/3 < r", n, j)
    _require(Fraction(m, 2) < r, "r > m/2", n, j)
    if trace is not None:
        trace.append(("split_r", n, j, {"r": r}))
    parts, idx, how = _case_b(n - r, j, trace)
    return parts + (r,), idx, "split_r/" + how


def _step_b3(n, j, trace):
    m = n - j
    s_found = primes_in_interval(Fraction(3 * j, 4), j - 8, open_lo=True, open_hi=True)
    _require(bool(s_found), "prime s in (3j/4, j-8)", n, j)
    s = s_found[-1]
    _require(Fraction(3 * j, 4) < s < j - 8, "prime s in (3j/4, j-8)", n, j)
    _require(Fraction(m, 2) < s, "s > m/2", n, j)
    r_found = [r for r in primes_in_interval(Fraction(m, 2), m - 8, open_lo=True, open_hi=True) if r != s]
    _require(bool(r_found), "prime r != s in (m/2, m-8)", n, j)
    r = r_found[-1]
    _require(Fraction(m, 2) < r < m - 8, "prime r != s in (m/2, m-8)", n, j)
    if trace is not None:
        trace.append(("split_sr", n, j, {"s": s, "r": r}))
    parts, idx, how = _case_b(n - s - r, j - s, trace)
    return (s,) + parts + (r,), [0] + [i + 1 for i in idx], "split_sr/" + how


def decompose_ii(n: int, j: int, trace: list | None = None) -> tuple[Decomposition, RestrictionMap]:
    """Kind-II decomposition of n adapted to j, with eta mapping j-parts to parts."""
    if n < 5:
        raise DecompositionError(f"kind-II decomposition needs n >= 5, got {n}")
    if not 1 <= j <= n:
        raise DecompositionError(f"j={j} outside 1..{n}")
    if (n, j) in EXCLUDED_II:
        raise ExcludedPair(f"(n, j) = ({n}, {j}) admits no kind-II decomposition")
    row = _small_j_row(n, j)
    if row is not None:
        parts, pairs = row
        dec = Decomposition(n, tuple(parts), "II")
        rmap = RestrictionMap(j, tuple(a for a, _ in pairs), tuple(b for _, b in pairs))
        if trace is not None:
            trace.append(("small_j", n, j, {}))
    else:
        parts, idx, how = _case_b(n, j, trace)
        dec = Decomposition(n, tuple(parts), "II")
        rmap = _identity_map(dec.parts, idx)
        if trace is not None:
            trace.append(("result", n, j, {"route": how}))
    _check(dec, rmap)
    return dec, rmap


def explicit_pairs_report() -> list[str]:
    """Mechanical audit of the explicit pairs: each row valid, and forms 1)-3) all fail."""
    bad = []
    for (n, j), (nj, jp) in EXPLICIT_PAIRS.items():
        if 2 * j > n or n > 112:
            bad.append(f"({n},{j}) outside 2j <= n <= 112")
        if sum(nj) != n - j or sum(jp) != j:
            bad.append(f"({n},{j}) sums wrong")
        parts = jp + nj
        dec = Decomposition(n, parts, "II")
        problems = verify_decomposition(dec, _identity_map(parts, list(range(len(jp)))))
        if problems:
            bad.append(f"({n},{j}) invalid: {problems}")
        for label, fparts, idx in closed_forms(n, j):
            if _form_valid(n, fparts, idx):
                bad.append(f"({n},{j}) closed form {label} already works")
    return bad


def tables_json() -> dict:
    rows1 = []
    for label, pairs in (
        ("(n,2)", [("n odd", "(n-1)+1", "2"), ("n even", "n", "2")]),
        ("(n,n-2)", [("n odd", "1+(n-1)", "1+(n-3)"), ("n even", "n", "n-2")]),
        ("(n,3)", [("n odd", "1+(n-1)", "1+2"), ("n = 0 mod 6", "n", "3"),
                   ("n = 2 mod 6", "1+4+(n-5)", "1+2"), ("n = 4 mod 6", "(n-1)+1", "3")]),
        ("(n,n-3)", [("n odd", "(n-1)+1", "n-3"), ("n = 0 mod 6", "n", "n-3"),
                     ("n = 2 mod 6", "4+(n-5)+1", "2+(n-5)"), ("n = 4 mod 6", "1+(n-1)", "1+(n-4)")]),
        ("(8,4),(16,6),(16,10)", [("-", "n", "j")]),
    ):
        for cond, n_dec, j_dec in pairs:
            rows1.append({"pair": label, "restriction": cond, "n": n_dec, "j": j_dec})
    rows2 = [
        {"n": n, "j": j, "n_minus_j": list(nj), "j_parts": list(jp)}
        for (n, j), (nj, jp) in sorted(EXPLICIT_PAIRS.items())
    ]
    return {"small_j_rules": rows1, "explicit_pairs": rows2}
