"""Semisimple elements of p-maximal order with a unit product of j characteristic values.

An element is described by blocks (size, modulus, gen): block i has the
characteristic values theta_i^(gen * (eq)^k), k = 0..size-1, where theta_i
generates a cyclic group of order ``modulus``. All blocks live in one
cyclic group of order N = lcm(moduli), so every characteristic value is
an exponent modulo N. Field elements appear only in ``realize_matrix``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .arith import multiplicative_order
from .decomp import Decomposition, RestrictionMap, decompose_i, decompose_ii, restrict_i
from .primdiv import exceptional_gcd_shape, gen_primitive_divisor
from .spectra import (
    GroupParams,
    build_pmax_certificate,
    certificate_violations,
    order_certificate,
)


class SemisimpleError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    size: int
    modulus: int
    gen: int

    @property
    def order(self) -> int:
        return self.modulus // math.gcd(self.modulus, self.gen)


@dataclass(frozen=True)
class ExponentValue:
    modulus: int
    exponent: int

    def __mul__(self, other: "ExponentValue") -> "ExponentValue":
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        return ExponentValue(self.modulus, (self.exponent + other.exponent) % self.modulus)

    @property
    def is_one(self) -> bool:
        return self.exponent % self.modulus == 0


@dataclass(frozen=True)
class SemisimpleSpec:
    params: GroupParams
    blocks: tuple[Block, ...]
    decomposition: Decomposition
    label: str = "regular"

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def modulus(self) -> int:
        return math.lcm(*(b.modulus for b in self.blocks))

    @property
    def order(self) -> int:
        return math.lcm(*(b.order for b in self.blocks))

    def offsets(self) -> list[int]:
        out, k = [], 0
        for b in self.blocks:
            out.append(k)
            k += b.size
        return out

    def to_json(self) -> dict:
        return {
            "group": self.params.to_json(),
            "label": self.label,
            "decomposition": self.decomposition.to_json(),
            "blocks": [{"size": b.size, "modulus": b.modulus, "gen_exponent": b.gen} for b in self.blocks],
            "order": self.order,
            "char_exponents": global_exponents(self),
            "exponent_modulus": self.modulus,
        }


def block_exponents(spec: SemisimpleSpec, block: Block) -> list[int]:
    eq = spec.params.epsilon * spec.params.q
    r = block.modulus
    return [block.gen * pow(eq, k, r) % r for k in range(block.size)]


def char_values(spec: SemisimpleSpec) -> list[ExponentValue]:
    """Characteristic values, each as an exponent modulo its block's modulus."""
    out = []
    for b in spec.blocks:
        out.extend(ExponentValue(b.modulus, e) for e in block_exponents(spec, b))
    return out


def global_exponents(spec: SemisimpleSpec) -> list[int]:
    """Characteristic values as exponents of one generator of order N = spec.modulus."""
    N = spec.modulus
    out = []
    for b in spec.blocks:
        scale = N // b.modulus
        out.extend(e * scale % N for e in block_exponents(spec, b))
    return out


def center_avoiding(spec: SemisimpleSpec) -> bool:
    """<g> meets the scalars only in 1.

    g^k is scalar iff k(e_i - e_1) = 0 mod N for all i; with
    D = gcd(N, e_i - e_1), that first happens at k = N/D, where g^k is
    the scalar theta^(e_1 N/D), trivial iff D divides e_1.
    """
    e = global_exponents(spec)
    N = spec.modulus
    D = N
    for x in e[1:]:
        D = math.gcd(D, x - e[0])
    return e[0] % D == 0


def center_avoidance_by_divisibility(spec: SemisimpleSpec) -> bool | None:
    """The argument through gcd(r, q - e1): the order is coprime to q - e1, or the
    exceptional 2-power shape occurs together with at least two blocks.
    None when the blocks are not of the regular form."""
    if spec.label != "regular":
        return None
    P = spec.params
    if math.gcd(spec.order, P.q - P.epsilon) == 1:
        return True
    shaped = any(b.size == 2 and exceptional_gcd_shape(P.q, 2, P.epsilon) for b in spec.blocks)
    return shaped and len(spec.blocks) >= 2


def _block_r(params: GroupParams, size: int) -> int:
    if size == 1:
        return 1
    res = gen_primitive_divisor(params.q, size, params.epsilon)
    if not res.defined:
        raise SemisimpleError(f"q*_[{params.sign}{size}]({params.q}) is undefined")
    return res.value


def build_spec(params: GroupParams, dec: Decomposition) -> SemisimpleSpec:
    """Block-diagonal element with blocks of order q*_[e n_i] (1 for n_i = 1)."""
    if dec.n != params.n:
        raise SemisimpleError(f"decomposition of {dec.n} used for n = {params.n}")
    blocks = tuple(Block(s, _block_r(params, s), 1) for s in dec.parts)
    spec = SemisimpleSpec(params, blocks, dec)
    if spec.order != math.prod(b.modulus for b in blocks):
        raise SemisimpleError("block orders are not pairwise coprime")
    if spec.order % params.p == 0:
        raise SemisimpleError("order divisible by p")
    return spec


def special_spec(params: GroupParams) -> SemisimpleSpec:
    """The two hand-built elements: order 21 in SL_6(2) and order 45 in SU_8(2)."""
    key = (params.epsilon, params.n, params.q)
    if key == (1, 6, 2):
        dec = Decomposition(6, (6,), "special")
        return SemisimpleSpec(params, (Block(6, 21, 1),), dec, "sl6_2")
    if key == (-1, 8, 2):
        dec = Decomposition(8, (4, 3, 1), "special")
        blocks = (Block(4, 45, 3), Block(3, 45, 40), Block(1, 45, 30))
        return SemisimpleSpec(params, blocks, dec, "su8_2")
    raise SemisimpleError(f"no special element for {params.name}")


# --- route dispatch ------------------------------------------------------------

def construction_route(params: GroupParams) -> str:
    """Which route covers L_n^e(q): 'a', 'b' or 'c'; raise outside the covered range."""
    n, q, e = params.n, params.q, params.epsilon
    if not params.is_simple():
        raise SemisimpleError(f"{params.simple_name} is not simple")
    if n >= 5 and q > 3:
        return "a"
    if params.m == 1 and n >= 4 and (e, n, q) != (-1, 4, 2):
        return "b"
    if n == 4 and params.p == 2:
        return "c"
    raise SemisimpleError(f"{params.simple_name} is outside the range n >= 5, or n = 4 with q prime or even")


def element_for_j(params: GroupParams, j: int) -> tuple[SemisimpleSpec, RestrictionMap | None]:
    """An element and decomposition of j for which j characteristic values multiply to 1.

    Follows the construction for prime q (and any q): n >= 4, (e, n, q) != (-, 4, 2).
    The map is None for the special elements, whose subset is found by search.
    """
    n, e, q = params.n, params.epsilon, params.q
    if n < 4 or (e, n, q) == (-1, 4, 2):
        raise SemisimpleError(f"no construction for {params.name}")
    if not 0 <= j <= n:
        raise SemisimpleError(f"j={j} outside 0..{n}")
    jj = j if j > 0 else 1
    if n == 4:
        if jj in (1, 3):
            dec = Decomposition(4, (1, 3), "special")
            rmap = RestrictionMap(jj, (1,), (0,)) if jj == 1 else RestrictionMap(3, (3,), (1,))
        else:
            dec = Decomposition(4, (4,), "special")
            rmap = RestrictionMap(jj, (jj,), (0,))
    elif (n, jj) == (6, 3):
        if (e, q) == (1, 2):
            return special_spec(params), None
        dec = Decomposition(6, (6,), "special")
        rmap = RestrictionMap(3, (3,), (0,))
    elif (n, jj) in ((8, 3), (8, 5)):
        if (e, q) == (-1, 2):
            return special_spec(params), None
        dec = Decomposition(8, (5, 3), "special")
        rmap = RestrictionMap(jj, (jj,), (0 if jj == 5 else 1,))
    else:
        dec, rmap = decompose_ii(n, jj)
    spec = build_spec(params, dec)
    if j == 0:
        rmap = RestrictionMap(0, (), ())
    return spec, rmap


def element_case_a(params: GroupParams) -> SemisimpleSpec:
    if not (params.n >= 5 and params.q > 3):
        raise SemisimpleError("the module-independent element needs n >= 5 and q > 3")
    return build_spec(params, decompose_i(params.n))


def restriction_case_a(spec: SemisimpleSpec, j: int) -> RestrictionMap:
    if j == 0:
        return RestrictionMap(0, (), ())
    return restrict_i(spec.decomposition, j)


# --- unit-product subsets -----------------------------------------------------

def find_unit_product_subset(spec: SemisimpleSpec, rmap: RestrictionMap | None, j: int | None = None) -> tuple[int, ...]:
    """Indices (into char_values) of j distinct values whose product is 1.

    With a restriction map, each summand j_i sent to a block of size n_i > 1
    takes the first j_i/d orbits {a + c f : c < d} (d = gcd(j_i, n_i),
    f = n_i/d), whose values multiply to 1 because r_i divides
    1 + x + ... + x^(d-1) with x = (eq)^f. Without a map (the special
    elements) the lexicographically first subset of size j is returned.
    """
    N = spec.modulus
    exps = global_exponents(spec)
    if rmap is None:
        if j is None:
            raise SemisimpleError("need j when no restriction map is given")
        for combo in itertools.combinations(range(len(exps)), j):
            if sum(exps[i] for i in combo) % N == 0:
                return combo
        raise SemisimpleError(f"no {j} characteristic values multiply to 1")
    if j is not None and j != rmap.j:
        raise SemisimpleError("j disagrees with the restriction map")
    offs = spec.offsets()
    chosen: list[int] = []
    for ji, b in zip(rmap.j_parts, rmap.eta):
        size = spec.blocks[b].size
        if size == 1:
            if ji != 1:
                raise SemisimpleError("summand larger than a 1-block")
            chosen.append(offs[b])
            continue
        d = math.gcd(ji, size)
        if d == 1:
            raise SemisimpleError(f"gcd({ji}, {size}) = 1")
        f = size // d
        for a in range(ji // d):
            chosen.extend(offs[b] + a + c * f for c in range(d))
    if len(set(chosen)) != len(chosen) or len(chosen) != rmap.j:
        raise SemisimpleError("orbit selection is not a set of j distinct values")
    if sum(exps[i] for i in chosen) % N:
        raise SemisimpleError("selected values do not multiply to 1")
    return tuple(sorted(chosen))


def subset_product_is_one(spec: SemisimpleSpec, idx) -> bool:
    """Recomputed per block modulus, independent of the subset search."""
    vals = char_values(spec)
    N = spec.modulus
    total = 0
    for i in idx:
        v = vals[i]
        total += v.exponent * (N // v.modulus)
    return total % N == 0


# --- p-maximality --------------------------------------------------------------

def pmax_certificate(spec: SemisimpleSpec):
    """Proof that p * |g| is not an element order of SL_n^e(q).

    Regular elements get the certificate from the block sizes; others are
    certified from the prime-power factorization of the order.
    """
    P = spec.params
    parts = spec.decomposition.parts
    s = 1 if 1 in parts else 0
    b_list = [x for x in parts if x > 1]
    if spec.label == "regular" and not certificate_violations(P, s, b_list):
        cert = build_pmax_certificate(P, s, b_list)
        if cert.semisimple_order != spec.order:
            raise SemisimpleError("certificate does not match the element order")
        return cert
    return order_certificate(P, spec.order, t=0)


# --- matrices ------------------------------------------------------------------

def _block_field(spec: SemisimpleSpec, block: Block, max_size: int):
    """Extension K of the natural field holding an element theta of order block.modulus."""
    from .matgrp.field import Embedding, make_field
    from .matgrp.groups import natural_field

    P = spec.params
    F = natural_field(P)
    deg = F.m
    M = math.lcm(multiplicative_order(P.p, block.modulus), deg) if block.modulus > 1 else deg
    if P.p**M > max_size:
        raise SemisimpleError(f"realization needs GF({P.p}^{M}), beyond the configured size")
    K = make_field(P.p, M)
    return F, K, Embedding(F, K), K.element_of_order(block.modulus)


def realize_matrix(spec: SemisimpleSpec, seed: int = 0, max_size: int = 1 << 16):
    """A block-diagonal matrix in SL_n^e(q) with the given characteristic values.

    Each block is the companion matrix of prod(x - theta^e) over the block's
    exponents, computed in an extension containing theta; for SU the block
    is then conjugated into the unitary group of the identity form. Blocks
    with a common modulus share theta.
    """
    from .matgrp.groups import is_in_group
    from .matgrp.matrix import MatrixElement, block_diag, companion

    P = spec.params
    rng = random.Random(seed)
    blocks = []
    F = None
    for b in spec.blocks:
        F, K, emb, theta = _block_field(spec, b, max_size)
        roots = [K.pow(theta, e) for e in block_exponents(spec, b)]
        poly = [1]
        for z in roots:
            nz = K.neg(z)
            new = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i] = K.add(new[i], K.mul(c, nz))
                new[i + 1] = K.add(new[i + 1], c)
            poly = new
        try:
            coeffs = [emb.back(c) for c in poly]
        except ValueError:
            raise SemisimpleError("block polynomial not defined over the natural field") from None
        C = companion(F, coeffs)
        if P.epsilon == -1:
            C = _unitarize(F, C, P.q, rng)
        blocks.append(C)
    g = MatrixElement(F, block_diag(blocks))
    if not is_in_group(P, g):
        raise SemisimpleError(f"realized matrix is not in {P.name}")
    return g


def _unitarize(F, C: np.ndarray, q: int, rng: random.Random) -> np.ndarray:
    """Conjugate C into {U : U conj(U)^T = I}, given that such a conjugate exists."""
    from .matgrp.matrix import conj, det, inverse, mat_mul, mat_sub, right_kernel

    n = C.shape[0]
    p = F.p
    basis_el = F.prime_basis()
    # F_p-linear map H -> (C H conj(C)^T - H, conj(H)^T - H) on n x n matrices over F
    Cb = conj(F, C, q).T
    cols = []
    units = []
    for a in range(n):
        for b in range(n):
            for x in basis_el:
                H = np.zeros((n, n), dtype=np.int64)
                H[a, b] = x
                units.append(H)
                img1 = mat_sub(F, mat_mul(F, mat_mul(F, C, H), Cb), H)
                img2 = mat_sub(F, conj(F, H, q).T, H)
                vec = np.concatenate([F.digits[img1.reshape(-1)].reshape(-1), F.digits[img2.reshape(-1)].reshape(-1)])
                cols.append(vec)
    from .matgrp.field import make_field

    Fp = make_field(p, 1)
    A = np.array(cols, dtype=np.int64).T % p
    ker = right_kernel(Fp, A)
    if ker.shape[0] == 0:
        raise SemisimpleError("no invariant Hermitian form")
    for _ in range(200):
        coeffs = [rng.randrange(p) for _ in range(ker.shape[0])]
        vec = np.zeros(A.shape[1], dtype=np.int64)
        for c, k in zip(coeffs, ker):
            vec = (vec + c * k) % p
        H = np.zeros((n, n), dtype=np.int64)
        for idx, cnt in enumerate(vec):
            for _ in range(int(cnt)):
                H = _madd(F, H, units[idx])
        if det(F, H) != 0:
            break
    else:
        raise SemisimpleError("no nondegenerate invariant Hermitian form found")
    T = _orthonormal_basis(F, H, q, rng)
    U = mat_mul(F, mat_mul(F, T, C), inverse(F, T))
    return U


def _madd(F, A, B):
    from .matgrp.matrix import mat_add

    return mat_add(F, A, B)


def _orthonormal_basis(F, H: np.ndarray, q: int, rng: random.Random) -> np.ndarray:
    """Rows t_a with t_a H conj(t_b)^T = delta_ab."""
    from .matgrp.groups import norm_one_scalar

    n = H.shape[0]

    def form(u, v):
        acc = 0
        for i in range(n):
            if not u[i]:
                continue
            for k in range(n):
                if v[k] and H[i, k]:
                    acc = F.add(acc, F.mul(F.mul(int(u[i]), int(H[i, k])), F.pow(int(v[k]), q)))
        return acc

    rows: list[list[int]] = []
    for _ in range(10_000):
        if len(rows) == n:
            break
        v = [rng.randrange(F.q) for _ in range(n)]
        for u in rows:
            c = form(v, u)
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, u)]
        nv = form(v, v)
        if nv == 0:
            continue
        c = norm_one_scalar(F, F.inv(nv), q)
        rows.append([F.mul(c, a) for a in v])
    if len(rows) != n:
        raise SemisimpleError("Gram-Schmidt failed")
    return np.array(rows, dtype=np.int64)


def eigen_exponents(spec: SemisimpleSpec, g, max_size: int = 1 << 16) -> list[list[int]]:
    """Eigenvalues of each diagonal block of a realized matrix, as sorted exponents
    of the theta used for that block."""
    from .matgrp.matrix import identity, mat_pow, mat_scale, mat_sub, rank

    out = []
    for b, off in zip(spec.blocks, spec.offsets()):
        F, K, emb, theta = _block_field(spec, b, max_size)
        sub = g.entries[off : off + b.size, off : off + b.size]
        A = np.vectorize(emb, otypes=[np.int64])(sub)
        n = A.shape[0]
        found = []
        for e in range(b.modulus):
            c = K.pow(theta, e)
            B = mat_sub(K, A, mat_scale(K, c, identity(n)))
            found.extend([e] * (n - rank(K, mat_pow(K, B, n))))
        out.append(sorted(found))
    return out


def realization_matches(spec: SemisimpleSpec, g) -> bool:
    """Block eigenvalue exponents agree with char_values and g is block diagonal."""
    off = spec.offsets()
    E = g.entries
    for b, o in zip(spec.blocks, off):
        outside = np.concatenate([E[o : o + b.size, :o], E[o : o + b.size, o + b.size :]], axis=1)
        if outside.any():
            return False
    want = [sorted(block_exponents(spec, b)) for b in spec.blocks]
    return eigen_exponents(spec, g) == want
