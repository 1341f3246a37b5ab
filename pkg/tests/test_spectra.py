import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverorders.spectra import (
    GroupParams,
    SpectraError,
    build_pmax_certificate,
    certificate_violations,
    has_unipotent_order,
    maximal_orders,
    multipartition_feasible,
    multipartition_search,
    multipartitions,
    order_certificate,
    order_in_small_spectrum,
    sl,
    su,
)


def test_group_params():
    P = su(4, 3)
    assert (P.p, P.m, P.d) == (3, 1, 4)
    assert P.name == "SU_4(3)" and P.simple_name == "U_4(3)"
    assert sl(3, 2).order_sl() == 168
    assert su(4, 2).order_sl() == 25920
    assert sl(4, 3).order_simple() == sl(4, 3).order_sl() // 2
    with pytest.raises(SpectraError):
        GroupParams(1, 3, 6)
    with pytest.raises(SpectraError):
        GroupParams(0, 3, 2)


def test_simplicity_screen():
    assert not sl(2, 2).is_simple() and not sl(2, 3).is_simple()
    assert not su(2, 5).is_simple() and not su(3, 2).is_simple()
    assert sl(2, 4).is_simple() and su(3, 3).is_simple()
    with pytest.raises(SpectraError):
        maximal_orders(su(3, 2))


def test_maximal_orders_examples():
    assert maximal_orders(sl(3, 2)) == (7, 3)
    assert maximal_orders(su(4, 2)) == (5, 9)


def test_maximal_orders_coprime():
    for q in range(2, 17):
        try:
            GroupParams(1, 2, q)
        except SpectraError:
            continue
        for n in range(2, 9):
            for e in (1, -1):
                P = GroupParams(e, n, q)
                if P.is_simple():
                    a, b = maximal_orders(P)
                    assert math.gcd(a, b) == 1


def test_gcd_identity():
    # gcd((q^n - e^n)/(q - e), q - e) = gcd(n, q - e)
    for q in range(2, 17):
        for n in range(1, 9):
            for e in (1, -1):
                if q - e == 0:
                    continue
                f = (q**n - e**n) // (q - e)
                assert math.gcd(f, q - e) == math.gcd(n, q - e)


def test_unipotent_orders():
    assert not has_unipotent_order(sl(4, 2), 2)
    assert has_unipotent_order(sl(5, 2), 2)
    assert has_unipotent_order(sl(2, 7), 0)
    with pytest.raises(SpectraError):
        has_unipotent_order(sl(4, 2), -1)


def test_multipartitions_shape():
    # multisets of pairs (i, mu) of weight n, without repeats, containing every ordinary partition
    from sympy.utilities.iterables import partitions

    for n in range(1, 9):
        mps = multipartitions(n)
        assert all(sum(i * mu for i, mu in mp) == n for mp in mps)
        assert len(set(mps)) == len(mps)
        # every partition of n appears as a multipartition with one pair per distinct part
        shapes = {tuple(sorted(p.items(), reverse=True)) for p in partitions(n)}
        assert shapes <= set(mps)


def test_feasibility_examples():
    assert not multipartition_search(5, 2, 0, [4]).feasible
    assert multipartition_search(9, 2, 0, [4]).feasible
    # empty b and p^t + 1 > n: reduces to the unipotent bound
    assert not multipartition_search(4, 2, 2, []).feasible
    assert multipartition_search(5, 2, 2, []).feasible


@given(st.integers(min_value=2, max_value=9), st.sampled_from([2, 3, 5]), st.integers(min_value=0, max_value=2),
       st.lists(st.integers(min_value=2, max_value=6), max_size=2))
def test_feasibility_is_monotone_in_n(n, p, t, b):
    if multipartition_search(n, p, t, b).feasible:
        assert multipartition_search(n + 1, p, t, b).feasible


def test_large_n_requires_opt_in():
    with pytest.raises(SpectraError):
        multipartition_search(13, 2, 0, [4])
    assert multipartition_feasible(sl(13, 2), 0, [4], allow_large=True)


def test_pmax_certificate_sl52():
    cert = build_pmax_certificate(sl(5, 2), 1, [4])
    assert cert.excluded_order == 10
    assert cert.r_list == (5,) and cert.search_trace > 0


def test_pmax_certificate_rejections():
    assert certificate_violations(su(8, 2), 1, [4]) == ["s + sum(b) = 5 != n = 8"]
    with pytest.raises(SpectraError):
        build_pmax_certificate(su(8, 2), 1, [4])
    # b = 3 is forbidden when (e, q) = (-, 2)
    with pytest.raises(SpectraError, match="forbids"):
        build_pmax_certificate(su(8, 2), 1, [4, 3])
    with pytest.raises(SpectraError, match="neither 0 nor a power"):
        build_pmax_certificate(sl(5, 2), 3, [2])


def test_order_certificate_su82():
    cert = order_certificate(su(8, 2), 45)
    assert cert.excluded_order == 90
    assert cert.params.n == 8
    assert cert.prime_powers == (9, 5) and cert.b_list == (3, 4)


def test_order_certificate_refuses_when_shape_allows():
    with pytest.raises(SpectraError):
        order_certificate(sl(9, 2), 5)


def test_small_spectrum_membership():
    assert order_in_small_spectrum(sl(3, 2), 7)
    assert not order_in_small_spectrum(sl(3, 2), 6)
    assert order_in_small_spectrum(su(4, 2), 12)
