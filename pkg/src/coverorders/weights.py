"""Weights for type A_l: coset index, Cartan solves, Steinberg digits, microweights.

Weights are coefficient vectors in the fundamental-weight basis
omega_1..omega_l. The root lattice has index l+1 in the weight lattice and
a1*omega_1 + ... + al*omega_l lies in the coset of omega_i exactly when
a1 + 2 a2 + ... + l al = i (mod l+1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .semisimple import (
    SemisimpleError,
    SemisimpleSpec,
    element_case_a,
    element_for_j,
    find_unit_product_subset,
    global_exponents,
    restriction_case_a,
    subset_product_is_one,
    construction_route,
)
from .spectra import GroupParams


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class DominantWeight:
    l: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.l:
            raise WeightError(f"expected {self.l} coefficients, got {len(self.coeffs)}")

    @classmethod
    def fundamental(cls, l: int, i: int) -> "DominantWeight":
        """omega_i, with omega_0 = 0."""
        a = [0] * l
        if i:
            a[i - 1] = 1
        return cls(l, tuple(a))

    @property
    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def is_restricted(self, k: int) -> bool:
        return all(0 <= a < k for a in self.coeffs)


@dataclass(frozen=True)
class EpsWeight:
    n: int
    indices: frozenset[int]
    scale: int = 1

    def __post_init__(self):
        if not all(1 <= i <= self.n for i in self.indices):
            raise WeightError("indices must lie in 1..n")


def coset_index(w: DominantWeight) -> int:
    return sum((i + 1) * a for i, a in enumerate(w.coeffs)) % (w.l + 1)


@lru_cache(maxsize=None)
def cartan_matrix(l: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(l)) for i in range(l))


@lru_cache(maxsize=None)
def _cartan_inverse(l: int) -> tuple[tuple[Fraction, ...], ...]:
    # (C^-1)_{ij} = min(i,j) (l+1-max(i,j)) / (l+1), 1-based
    return tuple(
        tuple(Fraction(min(i, j) * (l + 1 - max(i, j)), l + 1) for j in range(1, l + 1))
        for i in range(1, l + 1)
    )


def cartan_solve(w: DominantWeight, i: int):
    """Root coordinates x with w - omega_i = sum x_k alpha_k, or None if not integral.

    alpha_k = sum_j C[k][j] omega_j, so x solves C^T x = w - omega_i.
    """
    if not 0 <= i <= w.l:
        raise WeightError(f"i must lie in 0..{w.l}")
    target = list(w.coeffs)
    if i:
        target[i - 1] -= 1
    inv = _cartan_inverse(w.l)  # C is symmetric
    x = [sum(inv[r][c] * target[c] for c in range(w.l)) for r in range(w.l)]
    if all(v.denominator == 1 for v in x):
        return [int(v) for v in x]
    return None


def cartan_check_exhaustive(l: int, bound: int = 4) -> int:
    """Count weights with |a_i| <= bound where the integral coset differs from the congruence.

    Vectorized: with B = (l+1) C^-1 (an integer matrix), w - omega_i is in
    the root lattice iff B (w - omega_i) = 0 mod (l+1).
    """
    B = np.array([[int(v * (l + 1)) for v in row] for row in _cartan_inverse(l)], dtype=np.int64)
    vals = np.arange(-bound, bound + 1)
    grid = np.array(list(itertools.product(vals, repeat=l)), dtype=np.int64)
    congruence = (grid @ np.arange(1, l + 1)) % (l + 1)
    hits = np.zeros(len(grid), dtype=np.int64)
    solved = np.full(len(grid), -1)
    for i in range(l + 1):
        shifted = grid.copy()
        if i:
            shifted[:, i - 1] -= 1
        integral = ((shifted @ B.T) % (l + 1) == 0).all(axis=1)
        hits += integral
        solved[integral] = i
    return int(((hits != 1) | (solved != congruence)).sum())


def steinberg_digits(w: DominantWeight, p: int, m: int) -> list[DominantWeight]:
    """lambda = lambda_0 + p lambda_1 + ... + p^(m-1) lambda_(m-1), each p-restricted."""
    if not w.is_restricted(p**m):
        raise WeightError(f"weight {w.coeffs} is not {p}^{m}-restricted")
    digits = []
    rest = list(w.coeffs)
    for _ in range(m):
        digits.append(DominantWeight(w.l, tuple(a % p for a in rest)))
        rest = [a // p for a in rest]
    return digits


def recombine(digits, p: int) -> DominantWeight:
    l = digits[0].l
    coeffs = [sum(d.coeffs[k] * p**i for i, d in enumerate(digits)) for k in range(l)]
    return DominantWeight(l, tuple(coeffs))


def microweight_set(n: int, k: int) -> list[EpsWeight]:
    """Weights of the k-th exterior power of the natural module: all k-subsets of 1..n."""
    if not 0 <= k < n:
        raise WeightError(f"need 0 <= k < {n}")
    return [EpsWeight(n, frozenset(c)) for c in itertools.combinations(range(1, n + 1), k)]


@dataclass
class Witness:
    params: GroupParams
    case: str
    weight: DominantWeight
    digits: list[DominantWeight]
    k: list[int]
    spec: SemisimpleSpec
    subsets: list[tuple[int, ...]]
    certificate_sum: int

    @property
    def mixed_weight(self) -> list[EpsWeight]:
        return [EpsWeight(self.params.n, frozenset(i + 1 for i in s), self.params.p**t)
                for t, s in enumerate(self.subsets)]

    def to_json(self) -> dict:
        return {
            "group": self.params.to_json(),
            "case": self.case,
            "weight": list(self.weight.coeffs),
            "digits": [list(d.coeffs) for d in self.digits],
            "k": self.k,
            "element": self.spec.to_json(),
            "subsets": [[i + 1 for i in s] for s in self.subsets],
            "certificate": {
                "sum_p_power_weighted": self.certificate_sum,
                "modulus": self.spec.modulus,
                "mu_h_is_one": self.certificate_sum % self.spec.modulus == 0,
            },
        }


def fixed_weight_witness(params: GroupParams, w: DominantWeight, spec: SemisimpleSpec | None = None) -> Witness:
    """Subsets mu_i of the characteristic values, one per Steinberg digit, with mu(h) = 1.

    Case (a) uses one element for all digits; case (b) picks the element after
    j = coset index of the (single) digit.
    """
    if w.l != params.n - 1:
        raise WeightError(f"weight rank {w.l} does not match n - 1 = {params.n - 1}")
    if not w.is_dominant:
        raise WeightError("weight must be dominant")
    case = construction_route(params)
    if case == "c":
        raise SemisimpleError("n = 4 with q even is covered by the Frobenius subgroup, not by a weight")
    digits = steinberg_digits(w, params.p, params.m)
    ks = [coset_index(d) for d in digits]
    subsets = []
    if case == "a":
        spec = spec or element_case_a(params)
        for k in ks:
            rmap = restriction_case_a(spec, k)
            subsets.append(find_unit_product_subset(spec, rmap) if k else ())
    else:
        (k,) = ks
        built, rmap = element_for_j(params, k)
        spec = spec or built
        if k == 0:
            subsets.append(())
        else:
            subsets.append(find_unit_product_subset(spec, rmap, k))
    exps = global_exponents(spec)
    total = sum(params.p**t * sum(exps[i] for i in s) for t, s in enumerate(subsets))
    if total % spec.modulus or not all(subset_product_is_one(spec, s) for s in subsets):
        raise SemisimpleError("witness certificate failed")
    return Witness(params, case, w, digits, ks, spec, subsets, total)
