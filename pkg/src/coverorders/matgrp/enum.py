"""Breadth-first enumeration of matrix groups over a prime field.

Elements are D x D matrices over F_p stored as one uint64 code each:

* p = 2 and D <= 8: bit D*i + j holds entry (i, j), and products use
  shift/mask arithmetic directly on the codes;
* otherwise: base-p digits in row-major order (needs p^(D*D) < 2^63),
  with products done on decoded arrays.

After the closure is found, element orders come from a vectorized power
iteration g, g^2, ... that also accumulates N(g) = 1 + g + ... + g^(|g|-1)
and notes the first power landing in a given central subgroup.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

DEFAULT_CAP = 20_000_000
CAP_ENV = "COVERORDERS_ENUM_CAP"
_BITMAP_LIMIT = 1 << 27


class TooLarge(RuntimeError):
    """The requested enumeration exceeds the configured cap."""


def enum_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get(CAP_ENV)
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{CAP_ENV} must be positive")
        return value
    return DEFAULT_CAP


class Codec:
    def __init__(self, p: int, D: int):
        self.p, self.D = p, D
        self.packed = p == 2 and D <= 8
        if not self.packed and D * D * math.log2(p) >= 63:
            raise TooLarge(f"{D}x{D} matrices over F_{p} do not fit a 64-bit code")
        self.size = p ** (D * D)
        if self.packed:
            self.colmask = np.uint64(sum(1 << (D * i) for i in range(D)))
            self.rowmask = np.uint64((1 << D) - 1)
        else:
            self.weights = np.array([p**k for k in range(D * D)], dtype=np.uint64)

    def encode(self, mats: np.ndarray) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, self.D * self.D)
        if self.packed:
            shifts = np.arange(self.D * self.D, dtype=np.uint64)
            return (mats.astype(np.uint64) << shifts).sum(axis=1, dtype=np.uint64)
        return (mats.astype(np.uint64) * self.weights).sum(axis=1, dtype=np.uint64)

    def decode(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.uint64)
        if self.packed:
            shifts = np.arange(self.D * self.D, dtype=np.uint64)
            flat = (codes[:, None] >> shifts) & np.uint64(1)
        else:
            flat = (codes[:, None] // self.weights) % np.uint64(self.p)
        return flat.astype(np.int64).reshape(-1, self.D, self.D)

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Elementwise products of code arrays (B may be a single code)."""
        if self.packed:
            D = self.D
            out = np.zeros(np.broadcast(A, B).shape, dtype=np.uint64)
            for k in range(D):
                col = (A >> np.uint64(k)) & self.colmask
                row = (B >> np.uint64(D * k)) & self.rowmask
                out ^= col * row
            return out
        a = self.decode(A)
        b = self.decode(np.atleast_1d(B))
        return self.encode(np.matmul(a, b) % self.p)


@dataclass
class GroupEnum:
    p: int
    D: int
    generators: list
    codes: np.ndarray
    orders: np.ndarray
    proj_orders: np.ndarray | None = None
    n_nonzero: np.ndarray | None = None
    order_histogram: dict = field(default_factory=dict)
    module_block: tuple[int, int] | None = None

    @property
    def size(self) -> int:
        return int(self.codes.size)

    def spectrum(self) -> set[int]:
        return set(int(k) for k in np.unique(self.orders))

    def projective_spectrum(self) -> set[int]:
        if self.proj_orders is None:
            raise ValueError("no central subgroup was supplied")
        return set(int(k) for k in np.unique(self.proj_orders))

    def matrices(self, idx=None) -> np.ndarray:
        codec = Codec(self.p, self.D)
        codes = self.codes if idx is None else self.codes[idx]
        return codec.decode(codes)


def closure(gens, p: int, cap: int | None = None) -> np.ndarray:
    """Sorted codes of all elements of the group generated by ``gens``."""
    cap = enum_cap(cap)
    D = gens[0].shape[0]
    codec = Codec(p, D)
    gcodes = codec.encode(np.array(gens))
    ident = codec.encode(np.eye(D, dtype=np.int64)[None])[0]
    use_bitmap = codec.size <= _BITMAP_LIMIT
    if use_bitmap:
        seen_map = np.zeros(codec.size, dtype=bool)
        seen_map[int(ident)] = True
    else:
        seen = np.array([ident], dtype=np.uint64)
    frontier = np.array([ident], dtype=np.uint64)
    count = 1
    while frontier.size:
        prods = np.concatenate([codec.mul(frontier, g) for g in gcodes])
        prods = np.unique(prods)
        if use_bitmap:
            new = prods[~seen_map[prods.astype(np.int64)]]
            seen_map[new.astype(np.int64)] = True
        else:
            new = prods[~np.isin(prods, seen, assume_unique=True)]
            seen = np.union1d(seen, new)
        count += new.size
        if count > cap:
            raise TooLarge(f"group has more than {cap} elements")
        frontier = new
    if use_bitmap:
        return np.flatnonzero(seen_map).astype(np.uint64)
    return seen


def element_orders(codes: np.ndarray, p: int, D: int, center=None, mask=None, chunk: int = 1 << 21):
    """Orders (and optionally projective orders, N(g) != 0 on ``mask``) of the listed elements."""
    codec = Codec(p, D)
    ident = codec.encode(np.eye(D, dtype=np.int64)[None])[0]
    center_codes = None
    if center is not None:
        center_codes = np.unique(codec.encode(np.array(center)))
    mask_code = None
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if codec.packed:
            mask_code = codec.encode(mask.astype(np.int64)[None])[0]
    N = codes.size
    orders = np.zeros(N, dtype=np.int64)
    proj = np.zeros(N, dtype=np.int64) if center is not None else None
    nonzero = np.zeros(N, dtype=bool) if mask is not None else None
    for start in range(0, N, chunk):
        sl = slice(start, min(N, start + chunk))
        _orders_chunk(codec, codes[sl], ident, center_codes, mask, mask_code,
                      orders[sl], None if proj is None else proj[sl],
                      None if nonzero is None else nonzero[sl])
    return orders, proj, nonzero


def _orders_chunk(codec, g, ident, center_codes, mask, mask_code, out_orders, out_proj, out_nz):
    idx = np.arange(g.size)
    P = g.copy()
    need_sum = out_nz is not None
    packed = codec.packed
    if need_sum:
        if packed:
            S = np.full(g.size, ident, dtype=np.uint64)
        else:
            S = np.broadcast_to(np.eye(codec.D, dtype=np.int64), (g.size, codec.D, codec.D)).copy()
    proj_done = np.zeros(g.size, dtype=bool) if out_proj is not None else None
    k = 1
    while idx.size:
        if out_proj is not None:
            hit = ~proj_done[idx] & np.isin(P, center_codes)
            out_proj[idx[hit]] = k
            proj_done[idx[hit]] = True
        done = P == ident
        if done.any():
            finished = idx[done]
            out_orders[finished] = k
            if need_sum:
                if packed:
                    out_nz[finished] = (S[done] & mask_code) != 0
                else:
                    out_nz[finished] = (S[done][:, mask] != 0).any(axis=1)
            keep = ~done
            idx, P = idx[keep], P[keep]
            gk = g[idx]
            if need_sum:
                S = S[keep]
        else:
            gk = g[idx]
        if not idx.size:
            break
        if need_sum:
            if packed:
                S ^= P
            else:
                S = (S + codec.decode(P)) % codec.p
        P = codec.mul(P, gk)
        k += 1


def enumerate_group(gens, p: int, cap: int | None = None, center=None, mask=None) -> GroupEnum:
    gens = [np.asarray(g, dtype=np.int64) % p for g in gens]
    D = gens[0].shape[0]
    codes = closure(gens, p, cap)
    orders, proj, nonzero = element_orders(codes, p, D, center, mask)
    hist = {int(k): int(v) for k, v in zip(*np.unique(orders, return_counts=True))}
    log.debug("enumerated %d elements, D=%d, p=%d", codes.size, D, p)
    return GroupEnum(p, D, gens, codes, orders, proj, nonzero, hist)
