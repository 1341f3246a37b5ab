"""End-to-end: a module W for SL_n^e(q) -> an element g with p|g| new in W : L.

For cases (a) and (b) the route is weight -> Steinberg digits -> unit
product subsets -> realized g -> fixed vector of g on W -> the pair
(w, g) of order p|g|, which the certificate shows is not an element
order of L. Case (c) goes through a Frobenius subgroup of order 20 in L_4^e(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matgrp.cover import (
    Module,
    fixed_vector_exists,
    frobenius_minpoly_check,
    parse_module,
)
from .matgrp.enum import TooLarge
from .matgrp.field import make_field
from .matgrp.matrix import expand, mat_order
from .semisimple import (
    SemisimpleError,
    center_avoiding,
    pmax_certificate,
    realization_matches,
    realize_matrix,
    construction_route,
)
from .spectra import GroupParams, has_unipotent_order
from .weights import DominantWeight, fixed_weight_witness


def module_weight(params: GroupParams, spec: str) -> DominantWeight:
    """Highest weight of a module expression built from natural, wedgeK, twistK and tensors."""
    l = params.n - 1
    spec = spec.strip()
    if "*" in spec:
        left, right = spec.split("*", 1)
        a, b = module_weight(params, left), module_weight(params, right)
        return DominantWeight(l, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))
    if spec.startswith("twist"):
        head, _, rest = spec.partition(":")
        k = int(head[5:] or 1)
        base = module_weight(params, rest or "natural")
        return DominantWeight(l, tuple(params.p**k * a for a in base.coeffs))
    if spec == "natural":
        return DominantWeight.fundamental(l, 1)
    if spec.startswith("wedge"):
        k = int(spec[5:])
        if not 1 <= k <= l:
            raise ValueError(f"wedge{k} needs 1 <= k <= {l}")
        return DominantWeight.fundamental(l, k)
    raise ValueError(f"unknown module {spec!r}")


def pair_order(p: int, M: np.ndarray, w: np.ndarray) -> int:
    """Order of (w, g) in W : <g>, by repeated multiplication (v, h)(w, g) = (v g + w, h g)."""
    D = M.shape[0]
    ident = np.eye(D, dtype=np.int64)
    v, h = w.copy() % p, M.copy()
    k = 1
    while not (np.array_equal(h, ident) and not v.any()):
        v = (v @ M + w) % p
        h = (h @ M) % p
        k += 1
    return k


@dataclass
class PipelineResult:
    params: GroupParams
    module: str
    case: str
    element_order: int
    cover_order: int
    excluded_order: int
    vector: list[int]
    checks: dict = field(default_factory=dict)
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "group": self.params.to_json(),
            "module": self.module,
            "case": self.case,
            "element_order": self.element_order,
            "cover_order": self.cover_order,
            "excluded_order": self.excluded_order,
            "w_over_Fp": self.vector,
            "checks": self.checks,
            "witness": self.witness,
            "ok": self.ok,
        }


def run_pipeline(params: GroupParams, module_spec: str = "natural", oracle: bool = False,
                 seed: int = 0) -> PipelineResult:
    case = construction_route(params)
    if case == "c":
        return _case_c(params, module_spec)
    weight = module_weight(params, module_spec)
    witness = fixed_weight_witness(params, weight)
    spec = witness.spec
    g = realize_matrix(spec, seed=seed)
    F = g.field
    module: Module = parse_module(module_spec)
    M = expand(F, module(F, g.entries))
    Fp = make_field(params.p, 1)
    has_fixed, w = fixed_vector_exists(Fp, M)
    if not has_fixed:
        raise SemisimpleError(f"g has no fixed vector on {module_spec}; witness contradicted")
    order = mat_order(F, g.entries)
    cert = pmax_certificate(spec)
    checks = {
        "realization_matches_char_values": realization_matches(spec, g),
        "matrix_order_equals_spec_order": order == spec.order,
        "w_g_equals_w": bool(np.array_equal((w @ M) % params.p, w)),
        "w_nonzero": bool(w.any()),
        "center_avoiding": center_avoiding(spec),
        "certificate_excludes_p_order": cert.excluded_order == params.p * spec.order,
    }
    cover = pair_order(params.p, M, w)
    checks["pair_order_is_p_times_order"] = cover == params.p * order
    if oracle:
        from .matgrp.groups import simple_spectrum

        try:
            checks["oracle_excludes_p_order"] = params.p * order not in simple_spectrum(params)
        except TooLarge:
            pass
    return PipelineResult(params, module_spec, case, order, cover, cert.excluded_order,
                          [int(x) for x in w], checks, witness.to_json())


def frobenius_subgroup(params: GroupParams):
    """K<c> in SL_4^e(2) with |K| = q*_[e4] and |c| = 4, found in the enumerated group.

    c is chosen so that c^-1 k c = k^a with a of order 4 modulo |k|, which
    makes <c> act fixed-point-freely on K.
    """
    from .matgrp.groups import group_enum
    from .primdiv import qstar

    r = qstar(params.q, 4, params.epsilon)
    ge = group_enum(params)
    p = ge.p
    mats = ge.matrices(np.flatnonzero(ge.orders == r)[:1])
    if not len(mats):
        raise SemisimpleError(f"no element of order {r} in {params.name}")
    k = mats[0]
    powers = [np.eye(ge.D, dtype=np.int64)]
    for _ in range(r - 1):
        powers.append(powers[-1] @ k % p)
    targets = [powers[a] for a in range(1, r) if pow(a, 2, r) != 1]
    C = ge.matrices(np.flatnonzero(ge.orders == 4))
    conj = np.matmul(np.matmul(np.linalg.matrix_power(C, 3) % p, k), C) % p
    for c, x in zip(C, conj):
        if any(np.array_equal(x, t) for t in targets):
            return make_field(p, 1), [k], c
    raise SemisimpleError(f"no Frobenius subgroup {r}:4 found in {params.name}")


def _case_c(params: GroupParams, module_spec: str) -> PipelineResult:
    """n = 4, q even: a Frobenius group K:4 makes 8 a new order.

    Realized for q = 2 (L_4(2) and U_4(2)) on the natural module over F_2.
    """
    if params.q != 2 or module_spec != "natural":
        raise SemisimpleError("the Frobenius route is realized only for q = 2 on the natural module")
    F2, kernel, c = frobenius_subgroup(params)
    report = frobenius_minpoly_check(F2, kernel, c, c_order=4)
    # c is a 2-element, so (w, c) has order 8 iff w N(c) != 0, N(c) = 1 + c + c^2 + c^3
    N = np.zeros_like(c)
    P = np.eye(c.shape[0], dtype=np.int64)
    for _ in range(4):
        N = (N + P) % 2
        P = P @ c % 2
    rows = np.flatnonzero(N.any(axis=1))
    w = np.zeros(c.shape[0], dtype=np.int64)
    if rows.size:
        w[rows[0]] = 1
    cover = pair_order(2, c, w)
    checks = {
        "frobenius_minpoly_full": report.minpoly_is_full,
        "w_norm_nonzero": bool(rows.size),
        "pair_order_is_8": cover == 8,
        "8_excluded_by_unipotent_bound": not has_unipotent_order(params, 2),
    }
    return PipelineResult(params, module_spec, "c", 4, cover, 8, [int(x) for x in w], checks,
                          {"frobenius": report.to_json()})
