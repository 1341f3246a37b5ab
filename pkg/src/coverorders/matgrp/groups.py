"""Generators and enumerated spectra of SL_n(q) and SU_n(q)."""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from ..spectra import GroupParams
from .enum import GroupEnum, TooLarge, closure, enum_cap, enumerate_group
from .field import GF, make_field
from .matrix import (
    MatrixElement,
    conj,
    det,
    expand,
    identity,
    is_unitary,
    mat_mul,
    mat_scale,
)


def natural_field(params: GroupParams) -> GF:
    """F_q for SL, F_{q^2} for SU."""
    return make_field(params.p, params.m if params.epsilon == 1 else 2 * params.m)


def sl_generators(n: int, F: GF) -> list[np.ndarray]:
    """Transvections I + a E_12 (a over an F_p-basis) and a signed n-cycle."""
    gens = []
    for a in F.prime_basis():
        t = identity(n)
        t[0, 1] = a
        gens.append(t)
    w = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        w[i, i + 1] = 1
    w[n - 1, 0] = 1 if n % 2 == 1 else F.neg(1)
    gens.append(w)
    return gens


def norm_one_scalar(F: GF, t: int, q: int) -> int:
    """c with c^(q+1) = t, for t in the subfield F_q^*."""
    lt = int(F.log[t])
    if lt % (q + 1):
        raise ValueError(f"{t} is not in F_{q}")
    return int(F.exp[lt // (q + 1)])


def _hdot(F: GF, u, v, q: int) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(int(a), F.pow(int(b), q)))
    return acc


def random_su_element(n: int, q: int, F: GF, rng: random.Random) -> np.ndarray:
    """Uniform-ish random matrix with orthonormal rows for sum(u_i v_i^q) and det 1."""
    rows: list[list[int]] = []
    while len(rows) < n:
        v = [rng.randrange(F.q) for _ in range(n)]
        for u in rows:
            c = _hdot(F, v, u, q)
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, u)]
        nv = _hdot(F, v, v, q)
        if nv == 0:
            continue
        c = norm_one_scalar(F, F.inv(nv), q)
        rows.append([F.mul(c, a) for a in v])
    g = np.array(rows, dtype=np.int64)
    delta = det(F, g)
    g[0] = mat_scale(F, F.inv(delta), g[0:1])[0]
    assert det(F, g) == 1 and is_unitary(F, g, q)
    return g


@lru_cache(maxsize=None)
def _su_generators(n: int, q: int, seed: int, verify: bool, cap: int | None):
    params = GroupParams(-1, n, q)
    F = natural_field(params)
    rng = random.Random(seed)
    gens = [random_su_element(n, q, F, rng) for _ in range(2)]
    if not verify:
        return tuple(gens)
    target = params.order_sl()
    if target > enum_cap(cap):
        raise TooLarge(f"|{params.name}| = {target} exceeds the enumeration cap")
    for _ in range(8):
        size = closure([expand(F, g) for g in gens], F.p, cap).size
        if size == target:
            return tuple(gens)
        if size > target:
            raise AssertionError("generated group larger than SU_n(q)")
        gens.append(random_su_element(n, q, F, rng))
    raise AssertionError(f"random generators failed to generate {params.name}")


def sl_su_generators(params: GroupParams, seed: int = 0, verify: bool = True,
                     cap: int | None = None) -> list[MatrixElement]:
    F = natural_field(params)
    if params.epsilon == 1:
        mats = sl_generators(params.n, F)
    else:
        mats = list(_su_generators(params.n, params.q, seed, verify, cap))
    return [MatrixElement(F, g) for g in mats]


def center_scalars(params: GroupParams) -> list[int]:
    """Scalars c with cI in SL_n^e(q)."""
    F = natural_field(params)
    out = []
    for c in range(1, F.q):
        if F.pow(c, params.n) != 1:
            continue
        if params.epsilon == -1 and F.pow(c, params.q + 1) != 1:
            continue
        out.append(c)
    return out


def center_matrices(params: GroupParams, blocks=None) -> list[np.ndarray]:
    """The center of SL_n^e(q) as F_p-matrices; ``blocks`` lists extra diagonal blocks
    given as functions c -> matrix of the scalar's action."""
    F = natural_field(params)
    out = []
    for c in center_scalars(params):
        m = expand(F, mat_scale(F, c, identity(params.n)))
        if blocks:
            from .matrix import block_diag

            m = block_diag([m] + [b(c) for b in blocks])
        out.append(m)
    return out


@lru_cache(maxsize=16)
def group_enum(params: GroupParams, cap: int | None = None, with_module: bool = False) -> GroupEnum:
    """Enumerate SL_n^e(q) acting on its natural module expanded over F_p."""
    target = params.order_sl()
    if target > enum_cap(cap):
        raise TooLarge(f"|{params.name}| = {target} exceeds the enumeration cap {enum_cap(cap)}")
    F = natural_field(params)
    gens = [expand(F, g.entries) for g in sl_su_generators(params, cap=cap)]
    D = gens[0].shape[0]
    mask = np.ones((D, D), dtype=bool) if with_module else None
    ge = enumerate_group(gens, F.p, cap, center=center_matrices(params), mask=mask)
    if ge.size != target:
        raise AssertionError(f"enumerated {ge.size} elements, expected {target}")
    return ge


def group_spectrum(params: GroupParams, cap: int | None = None) -> set[int]:
    """Element orders of SL_n^e(q)."""
    return group_enum(params, cap).spectrum()


def simple_spectrum(params: GroupParams, cap: int | None = None) -> set[int]:
    """Element orders of SL_n^e(q)/Z."""
    return group_enum(params, cap).projective_spectrum()


def exponent_check(ge: GroupEnum, group_order: int) -> bool:
    """Histogram totals the group order and every element order divides it."""
    return sum(ge.order_histogram.values()) == group_order and all(
        group_order % k == 0 for k in ge.order_histogram
    )


def is_in_group(params: GroupParams, g: MatrixElement) -> bool:
    """det 1, and for SU also unitary for the identity form."""
    F = g.field
    if det(F, g.entries) != 1:
        return False
    if params.epsilon == -1:
        return is_unitary(F, g.entries, params.q)
    return True


def hermitian_conj(F: GF, A: np.ndarray, q: int) -> np.ndarray:
    return conj(F, A, q).T


__all__ = [
    "natural_field",
    "sl_su_generators",
    "group_enum",
    "group_spectrum",
    "simple_spectrum",
    "center_matrices",
    "mat_mul",
]
