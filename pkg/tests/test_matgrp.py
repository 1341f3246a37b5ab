import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverorders.matgrp.cover import (
    NotFrobenius,
    cover_for,
    cover_spectrum,
    fixed_vector_exists,
    frobenius_instance_affine,
    frobenius_instance_l42,
    frobenius_minpoly_check,
    literal_cover_orders,
    module_enum,
    parse_module,
)
from coverorders.matgrp.enum import CAP_ENV, TooLarge, enum_cap, enumerate_group
from coverorders.matgrp.field import is_irreducible, least_irreducible, make_field
from coverorders.matgrp.groups import (
    center_scalars,
    group_enum,
    group_spectrum,
    is_in_group,
    natural_field,
    simple_spectrum,
    sl_su_generators,
)
from coverorders.matgrp.matrix import (
    det,
    exterior_power,
    identity,
    inverse,
    mat_mul,
    mat_order,
    mat_pow,
)
from coverorders.spectra import sl, su


def test_field_moduli():
    assert least_irreducible(2, 1) == (0, 1)
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert is_irreducible((1, 1, 0, 0, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 2)])
def test_field_axioms(p, m):
    F = make_field(p, m)
    nz = range(1, F.q)
    assert all(F.mul(a, F.inv(a)) == 1 for a in nz)
    assert all(F.add(a, F.neg(a)) == 0 for a in F.elements())
    # the multiplicative group is cyclic of order q - 1
    assert max(F.order(a) for a in nz) == F.q - 1
    assert all(F.frob(a, m) == a for a in F.elements())
    for a, b, c in itertools.islice(itertools.product(F.elements(), repeat=3), 0, 4000, 7):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_group_orders_match_formula():
    for P in (sl(2, 2), sl(3, 2), su(4, 2), sl(2, 5), sl(3, 3)):
        assert group_enum(P).size == P.order_sl()


@pytest.mark.parametrize("P,spectrum", [
    (sl(3, 2), {1, 2, 3, 4, 7}),
    (su(4, 2), {1, 2, 3, 4, 5, 6, 9, 12}),
    (sl(3, 3), {1, 2, 3, 4, 6, 8, 13}),
    (su(3, 3), {1, 2, 3, 4, 6, 7, 8, 12}),
    (sl(4, 2), {1, 2, 3, 4, 5, 6, 7, 15}),
])
def test_frozen_spectra(P, spectrum):
    assert group_spectrum(P) == spectrum
    assert simple_spectrum(P) == spectrum


def test_spectrum_with_center():
    # SL_2(5) is the binary icosahedral group; its quotient is A_5
    assert group_spectrum(sl(2, 5)) == {1, 2, 3, 4, 5, 6, 10}
    assert simple_spectrum(sl(2, 5)) == {1, 2, 3, 5}
    assert center_scalars(sl(2, 5)) == [1, 4]


def test_generators_lie_in_group():
    for P in (sl(3, 4), su(3, 3), su(4, 2)):
        for g in sl_su_generators(P):
            assert is_in_group(P, g)


def test_su_generators_are_deterministic():
    a = sl_su_generators(su(4, 2), seed=3)
    b = sl_su_generators(su(4, 2), seed=3)
    assert a == b


def test_exterior_power():
    F = make_field(3, 1)
    A = np.array([[1, 2, 0], [0, 1, 1], [2, 0, 1]], dtype=np.int64)
    assert np.array_equal(exterior_power(F, A, 1), A)
    assert exterior_power(F, A, 3)[0, 0] == det(F, A)
    B = np.array([[0, 1, 1], [1, 1, 0], [2, 2, 1]], dtype=np.int64)
    # functoriality
    lhs = exterior_power(F, mat_mul(F, A, B), 2)
    rhs = mat_mul(F, exterior_power(F, A, 2), exterior_power(F, B, 2))
    assert np.array_equal(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=8), min_size=9, max_size=9))
def test_inverse_and_det(entries):
    F = make_field(3, 2)
    A = np.array(entries, dtype=np.int64).reshape(3, 3)
    if det(F, A) == 0:
        with pytest.raises(ValueError):
            inverse(F, A)
        return
    assert np.array_equal(mat_mul(F, A, inverse(F, A)), identity(3))
    o = mat_order(F, A)
    assert np.array_equal(mat_pow(F, A, o), identity(3))


def test_fixed_vectors():
    F = make_field(2, 1)
    cyc = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.int64)
    ok, v = fixed_vector_exists(F, cyc)
    assert ok and np.array_equal(mat_mul(F, v[None, :], cyc)[0], v)
    # a Singer cycle of order 7 fixes nothing
    singer = np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]], dtype=np.int64)
    assert mat_order(F, singer) == 7
    assert not fixed_vector_exists(F, singer)[0]
    assert fixed_vector_exists(F, identity(3))[0]


def test_frobenius_instances():
    F, K, c = frobenius_instance_l42()
    rep = frobenius_minpoly_check(F, K, c)
    assert (rep.kernel_order, rep.complement_order) == (5, 4)
    assert rep.minpoly_is_full and rep.fixed_space_dim == 1
    F, K, c = frobenius_instance_affine(5)
    rep = frobenius_minpoly_check(F, K, c)
    assert (rep.kernel_order, rep.complement_order) == (4, 3) and rep.minpoly_is_full


def test_frobenius_rejects_unfaithful_and_wrong_characteristic():
    F, K, c = frobenius_instance_l42()
    with pytest.raises(NotFrobenius, match="not faithful"):
        frobenius_minpoly_check(F, K, c, c_order=8)
    with pytest.raises(NotFrobenius):
        frobenius_minpoly_check(F, K, identity(4))
    # V_4 in characteristic 2 is not coprime to p
    F2, K2, c2 = frobenius_instance_affine(5)
    with pytest.raises(NotFrobenius):
        frobenius_minpoly_check(make_field(2, 1), K2, c2)


def test_cover_examples():
    assert cover_for(su(4, 2)).new_orders == {8}
    assert cover_for(sl(4, 2)).new_orders == {8, 12, 14}


def test_cover_trivial_group():
    F = make_field(3, 1)
    ge = enumerate_group([identity(2)], 3, mask=np.ones((2, 2), dtype=bool))
    assert cover_spectrum(ge).cover_orders == {1, 3}
    assert literal_cover_orders(ge) == {1, 3}
    assert F.p == ge.p


@pytest.mark.parametrize("P,module", [(sl(2, 2), "natural"), (sl(3, 2), "natural"), (sl(2, 3), "natural"),
                                      (sl(2, 4), "natural"), (sl(3, 2), "wedge2")])
def test_literal_cover_orders_match_rule(P, module):
    ge = module_enum(P, parse_module(module))
    assert literal_cover_orders(ge) == cover_spectrum(ge).cover_orders


def test_parse_module():
    F = natural_field(sl(4, 2))
    g = sl_su_generators(sl(4, 2))[-1].entries
    assert parse_module("wedge2")(F, g).shape == (6, 6)
    assert parse_module("natural*natural")(F, g).shape == (16, 16)
    assert np.array_equal(parse_module("twist1:natural")(F, g), g)
    with pytest.raises(ValueError):
        parse_module("adjoint")


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv(CAP_ENV, "100")
    assert enum_cap() == 100
    # a group not enumerated elsewhere, since enumerations are cached
    with pytest.raises(TooLarge):
        group_enum(sl(2, 7))
    monkeypatch.setenv(CAP_ENV, "-1")
    with pytest.raises(ValueError):
        enum_cap()
