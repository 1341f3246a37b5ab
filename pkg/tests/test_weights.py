import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from coverorders.semisimple import SemisimpleError, global_exponents
from coverorders.spectra import sl, su
from coverorders.weights import (
    DominantWeight,
    WeightError,
    cartan_check_exhaustive,
    cartan_matrix,
    cartan_solve,
    coset_index,
    fixed_weight_witness,
    microweight_set,
    recombine,
    steinberg_digits,
)


def test_coset_index_examples():
    assert coset_index(DominantWeight(4, (1, 0, 0, 0))) == 1
    assert coset_index(DominantWeight(4, (0, 0, 0, 1))) == 4
    assert coset_index(DominantWeight(4, (1, 0, 0, 1))) == 0
    assert coset_index(DominantWeight(2, (2, 2))) == 0
    assert coset_index(DominantWeight.fundamental(5, 3)) == 3


def test_cartan_solve_examples():
    # the first simple root is 2 omega_1 - omega_2
    alpha1 = DominantWeight(4, (2, -1, 0, 0))
    assert cartan_solve(alpha1, 0) == [1, 0, 0, 0]
    assert cartan_solve(DominantWeight.fundamental(4, 1), 0) is None
    assert cartan_solve(DominantWeight.fundamental(4, 1), 1) == [0, 0, 0, 0]
    with pytest.raises(WeightError):
        cartan_solve(alpha1, 5)


@given(st.integers(min_value=1, max_value=7), st.data())
def test_cartan_solve_agrees_with_sympy(l, data):
    coeffs = tuple(data.draw(st.lists(st.integers(min_value=-5, max_value=5), min_size=l, max_size=l)))
    i = data.draw(st.integers(min_value=0, max_value=l))
    w = DominantWeight(l, coeffs)
    target = list(coeffs)
    if i:
        target[i - 1] -= 1
    x = sympy.Matrix(cartan_matrix(l)).T.solve(sympy.Matrix(target))
    integral = all(v.is_integer for v in x)
    got = cartan_solve(w, i)
    assert (got is not None) == integral
    assert integral == (coset_index(w) == i)
    if integral:
        assert got == [int(v) for v in x]


@pytest.mark.parametrize("l", range(1, 6))
def test_congruence_matches_integrality(l):
    assert cartan_check_exhaustive(l, bound=3) == 0


def test_steinberg_digit_examples():
    d = steinberg_digits(DominantWeight(1, (5,)), 2, 3)
    assert [x.coeffs for x in d] == [(1,), (0,), (1,)]
    d = steinberg_digits(DominantWeight(2, (7, 2)), 3, 2)
    assert [x.coeffs for x in d] == [(1, 2), (2, 0)]
    with pytest.raises(WeightError):
        steinberg_digits(DominantWeight(1, (8,)), 2, 3)


@given(st.integers(min_value=1, max_value=5), st.sampled_from([2, 3, 5]), st.integers(min_value=1, max_value=3),
       st.data())
def test_steinberg_round_trip(l, p, m, data):
    coeffs = tuple(data.draw(st.lists(st.integers(min_value=0, max_value=p**m - 1), min_size=l, max_size=l)))
    w = DominantWeight(l, coeffs)
    digits = steinberg_digits(w, p, m)
    assert all(d.is_restricted(p) for d in digits)
    assert recombine(digits, p) == w


def test_microweights():
    assert len(microweight_set(6, 3)) == math.comb(6, 3) == 20
    assert microweight_set(4, 0)[0].indices == frozenset()
    with pytest.raises(WeightError):
        microweight_set(4, 4)


def test_witness_sl52_natural():
    wit = fixed_weight_witness(sl(5, 2), DominantWeight.fundamental(4, 1))
    assert wit.case == "b" and wit.k == [1]
    exps = global_exponents(wit.spec)
    assert all(sum(exps[i] for i in s) % wit.spec.modulus == 0 for s in wit.subsets)
    assert wit.to_json()["certificate"]["mu_h_is_one"]


def test_witness_case_a_multi_digit():
    # q = 4: two digits, one subset each, weighted by powers of p
    w = DominantWeight(4, (1, 0, 2, 0))
    wit = fixed_weight_witness(sl(5, 4), w)
    assert wit.case == "a" and len(wit.subsets) == 2
    assert [len(s) for s in wit.subsets] == wit.k
    assert wit.certificate_sum % wit.spec.modulus == 0
    assert len(wit.mixed_weight) == 2 and wit.mixed_weight[1].scale == 2


def test_witness_zero_coset_digit_is_empty():
    wit = fixed_weight_witness(sl(5, 2), DominantWeight(4, (1, 0, 0, 1)))
    assert wit.k == [0] and wit.subsets == [()]


def test_witness_rejections():
    with pytest.raises(SemisimpleError):
        fixed_weight_witness(sl(3, 2), DominantWeight.fundamental(2, 1))
    with pytest.raises(SemisimpleError):
        fixed_weight_witness(su(4, 2), DominantWeight.fundamental(3, 1))
    with pytest.raises(WeightError):
        fixed_weight_witness(sl(5, 2), DominantWeight.fundamental(3, 1))
    with pytest.raises(WeightError):
        fixed_weight_witness(sl(5, 2), DominantWeight(4, (1, -1, 0, 0)))


@given(st.sampled_from([sl(5, 2), sl(6, 3), su(7, 2), sl(5, 4), su(6, 4), sl(8, 5)]), st.data())
def test_witness_for_random_weights(P, data):
    l = P.n - 1
    coeffs = tuple(data.draw(st.lists(st.integers(min_value=0, max_value=P.q - 1), min_size=l, max_size=l)))
    wit = fixed_weight_witness(P, DominantWeight(l, coeffs))
    assert wit.certificate_sum % wit.spec.modulus == 0
    assert [len(s) for s in wit.subsets] == wit.k
