"""Spectra of split extensions W : G with W an elementary abelian p-group.

In W : G the pair (w, g) has (w, g)^|g| = (w N(g), 1) with
N(g) = 1 + g + ... + g^(|g|-1), so its order is |g| or p|g|, and p|g|
occurs for some w exactly when N(g) is nonzero on W.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..spectra import GroupParams
from .enum import GroupEnum, TooLarge, enum_cap, enumerate_group
from .field import GF
from .groups import center_scalars, natural_field, sl_su_generators
from .matrix import (
    block_diag,
    exterior_power,
    expand,
    frobenius_twist,
    identity,
    kron,
    left_kernel,
    mat_mul,
    mat_scale,
    mat_sub,
    rank,
)


class CharacteristicMismatch(ValueError):
    pass


# --- modules ----------------------------------------------------------------

@dataclass(frozen=True)
class Module:
    """A representation g -> act(g) of matrices over F, both sides over F."""

    name: str
    act: Callable[[GF, np.ndarray], np.ndarray]

    def __call__(self, F: GF, g: np.ndarray) -> np.ndarray:
        return self.act(F, g)


NATURAL = Module("natural", lambda F, g: np.asarray(g, dtype=np.int64))


def exterior_module(k: int) -> Module:
    return Module(f"wedge{k}", lambda F, g: exterior_power(F, g, k))


def twist_module(base: Module, k: int) -> Module:
    return Module(f"{base.name}^F{k}", lambda F, g: frobenius_twist(F, base(F, g), k))


def tensor_module(a: Module, b: Module, max_dim: int = 64) -> Module:
    def act(F, g):
        A, B = a(F, g), b(F, g)
        if A.shape[0] * B.shape[0] > max_dim:
            raise ValueError(f"tensor product dimension exceeds {max_dim}")
        return kron(F, A, B)

    return Module(f"({a.name})x({b.name})", act)


def parse_module(spec: str) -> Module:
    """'natural', 'wedgeK', 'twistK:<module>', 'A*B' (tensor)."""
    spec = spec.strip()
    if "*" in spec:
        left, right = spec.split("*", 1)
        return tensor_module(parse_module(left), parse_module(right))
    if spec.startswith("twist"):
        head, _, rest = spec.partition(":")
        return twist_module(parse_module(rest or "natural"), int(head[5:] or 1))
    if spec == "natural":
        return NATURAL
    if spec.startswith("wedge"):
        return exterior_module(int(spec[5:]))
    raise ValueError(f"unknown module {spec!r}")


# --- cover spectra --------------------------------------------------------------

@dataclass
class CoverResult:
    group_orders: set[int]
    cover_orders: set[int]
    module_dim: int

    @property
    def new_orders(self) -> set[int]:
        return self.cover_orders - self.group_orders

    def to_json(self) -> dict:
        return {
            "group_orders": sorted(self.group_orders),
            "cover_orders": sorted(self.cover_orders),
            "new_orders": sorted(self.new_orders),
            "module_dim_over_Fp": self.module_dim,
        }


def cover_spectrum(group: GroupEnum, module_p: int | None = None) -> CoverResult:
    """omega(W : G) = omega(G) + {p|g| : N(g) != 0 on W}, from an enumeration with N(g) flags."""
    if module_p is not None and module_p != group.p:
        raise CharacteristicMismatch(f"module characteristic {module_p} != group characteristic {group.p}")
    if group.n_nonzero is None:
        raise ValueError("enumeration carries no N(g) data; enumerate with a module mask")
    base = group.spectrum()
    extra = {group.p * int(k) for k in np.unique(group.orders[group.n_nonzero])}
    dim = group.D if group.module_block is None else group.module_block[1] - group.module_block[0]
    return CoverResult(base, base | extra, dim)


def module_enum(params: GroupParams, module: Module, cap: int | None = None,
                with_natural: bool | None = None) -> GroupEnum:
    """Enumerate SL_n^e(q) acting on V + W diagonally, flagging N(g) on the W block.

    For the natural module V itself the enumeration runs on V alone.
    """
    target = params.order_sl()
    if target > enum_cap(cap):
        raise TooLarge(f"|{params.name}| = {target} exceeds the enumeration cap")
    F = natural_field(params)
    nat = [g.entries for g in sl_su_generators(params, cap=cap)]
    if with_natural is None:
        with_natural = module is not NATURAL
    mats = []
    for g in nat:
        w = expand(F, module(F, g))
        mats.append(block_diag([expand(F, g), w]) if with_natural else w)
    D = mats[0].shape[0]
    start = D - expand(F, module(F, nat[0])).shape[0]
    mask = np.zeros((D, D), dtype=bool)
    mask[start:, start:] = True
    center = []
    for c in center_scalars(params):
        cI = mat_scale(F, c, identity(params.n))
        w = expand(F, module(F, cI))
        center.append(block_diag([expand(F, cI), w]) if with_natural else w)
    ge = enumerate_group(mats, F.p, cap, center=center, mask=mask)
    if ge.size != target:
        raise AssertionError(
            f"enumeration gave {ge.size} elements, expected {target}"
            + ("" if with_natural else " (module may not be faithful)")
        )
    ge.module_block = (start, D)
    return ge


def cover_for(params: GroupParams, module_spec: str = "natural", cap: int | None = None) -> CoverResult:
    return cover_spectrum(module_enum(params, parse_module(module_spec), cap))


def literal_cover_orders(group: GroupEnum, max_pairs: int = 1_000_000) -> set[int]:
    """Orders of all pairs (w, g) in W : G by direct multiplication
    (v, h)(w, g) = (v g + w, h g)."""
    start, stop = group.module_block if group.module_block is not None else (0, group.D)
    k = stop - start
    p = group.p
    n_w = p**k
    if n_w * group.size > max_pairs:
        raise TooLarge(f"|W : G| = {n_w * group.size} exceeds {max_pairs}")
    mats = group.matrices()
    G = mats
    Gw = mats[:, start:stop, start:stop]
    W = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    ident = np.eye(group.D, dtype=np.int64)
    # state for all pairs: v has shape (N, n_w, k), h has shape (N, D, D)
    v = np.broadcast_to(W, (group.size, n_w, k)).copy()
    h = G.copy()
    orders = np.zeros((group.size, n_w), dtype=np.int64)
    step = 1
    while True:
        h_id = (h == ident).all(axis=(1, 2))
        done = h_id[:, None] & (v == 0).all(axis=2) & (orders == 0)
        orders[done] = step
        if (orders > 0).all():
            break
        v = (np.einsum("gwk,gkl->gwl", v, Gw) + W[None, :, :]) % p
        h = np.matmul(h, G) % p
        step += 1
    return set(int(x) for x in np.unique(orders))


# --- fixed vectors and Frobenius configurations ---------------------------------

def fixed_vector_exists(F: GF, g: np.ndarray) -> tuple[bool, np.ndarray | None]:
    """Whether v g = v has a nonzero solution, with one solution."""
    K = left_kernel(F, mat_sub(F, g, identity(g.shape[0])))
    if K.shape[0] == 0:
        return False, None
    return True, K[0]


class NotFrobenius(ValueError):
    pass


def _enum_small(F: GF, gens, limit: int = 100_000) -> list[np.ndarray]:
    n = gens[0].shape[0]
    ident = identity(n)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(F, a, g)
                key = b.tobytes()
                if key not in seen:
                    seen[key] = b
                    nxt.append(b)
        if len(seen) > limit:
            raise TooLarge("subgroup too large for the Frobenius check")
        frontier = nxt
    return list(seen.values())


@dataclass
class FrobeniusReport:
    kernel_order: int
    complement_order: int
    minpoly_degree: int
    minpoly_is_full: bool
    fixed_space_dim: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def minpoly_degree(F: GF, c: np.ndarray) -> int:
    """Degree of the minimal polynomial: dimension of the span of I, c, c^2, ...."""
    n = c.shape[0]
    rows = []
    P = identity(n)
    best = 0
    for k in range(n * n + 1):
        rows.append(P.reshape(-1))
        r = rank(F, np.array(rows))
        if r == best:
            return best
        best = r
        P = mat_mul(F, P, c)
    return best


def frobenius_minpoly_check(F: GF, kernel_gens, c: np.ndarray, c_order: int | None = None) -> FrobeniusReport:
    """Verify K<c> is a Frobenius group acting faithfully, then test minpoly(c) = x^|c| - 1."""
    K = _enum_small(F, [np.asarray(k, dtype=np.int64) for k in kernel_gens])
    ident = identity(c.shape[0])
    keys = {k.tobytes() for k in K}
    powers = [ident]
    P = c
    while not np.array_equal(P, ident):
        powers.append(P)
        P = mat_mul(F, P, c)
        if len(powers) > 10_000:
            raise NotFrobenius("c has excessive order")
    order_c = len(powers)
    if c_order is not None and c_order != order_c:
        raise NotFrobenius(f"c acts with order {order_c}, not {c_order}: action is not faithful")
    if order_c == 1:
        raise NotFrobenius("c acts trivially")
    if len(K) % F.p == 0:
        raise NotFrobenius("|K| is divisible by the characteristic")
    from .matrix import inverse

    c_inv = inverse(F, c)
    for k in kernel_gens:
        if mat_mul(F, mat_mul(F, c_inv, np.asarray(k)), c).tobytes() not in keys:
            raise NotFrobenius("c does not normalize K")
    for P in powers[1:]:
        if P.tobytes() in keys:
            raise NotFrobenius("<c> meets K")
        for k in K:
            if np.array_equal(k, ident):
                continue
            if np.array_equal(mat_mul(F, k, P), mat_mul(F, P, k)):
                raise NotFrobenius("a nontrivial power of c centralizes a nontrivial kernel element")
    deg = minpoly_degree(F, c)
    fixed = left_kernel(F, mat_sub(F, c, ident)).shape[0]
    return FrobeniusReport(len(K), order_c, deg, deg == order_c, fixed)


def frobenius_instance_l42() -> tuple[GF, list[np.ndarray], np.ndarray]:
    """K = multiplication by an element of order 5 of F_16, c = the Frobenius x -> x^2,
    both acting on F_16 = F_2^4; K<c> is Frobenius of order 20 inside GL_4(2)."""
    from .field import make_field
    from .matrix import regular_rep

    F16 = make_field(2, 4)
    F2 = make_field(2, 1)
    theta = F16.element_of_order(5)
    k = regular_rep(F16, theta)
    c = np.array([F16.digits[F16.pow(x, 2)] for x in F16.prime_basis()], dtype=np.int64)
    return F2, [k], c


def frobenius_instance_affine(r: int = 5) -> tuple[GF, list[np.ndarray], np.ndarray]:
    """AGL_1(4) = A_4 acting on the permutation module of the 4 points of F_4 over F_r.

    This group sits in SL_3(2) as the matrices fixing the first basis
    vector of the dual; K is the translation group V_4 and c multiplies by
    a primitive cube root of unity.
    """
    from .field import make_field

    F4 = make_field(2, 2)
    Fr = make_field(r, 1)

    def perm_matrix(f):
        M = np.zeros((4, 4), dtype=np.int64)
        for x in range(4):
            M[x, f(x)] = 1
        return M

    omega = F4.element_of_order(3)
    kernel = [perm_matrix(lambda x, a=a: F4.add(x, a)) for a in (1, 2)]
    c = perm_matrix(lambda x: F4.mul(x, omega))
    return Fr, kernel, c
