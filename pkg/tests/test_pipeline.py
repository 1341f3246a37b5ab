import numpy as np
import pytest

from coverorders.matgrp.cover import frobenius_minpoly_check
from coverorders.pipeline import frobenius_subgroup, module_weight, pair_order, run_pipeline
from coverorders.semisimple import SemisimpleError
from coverorders.spectra import sl, su


def test_module_weight():
    P = sl(5, 4)
    assert module_weight(P, "natural").coeffs == (1, 0, 0, 0)
    assert module_weight(P, "wedge3").coeffs == (0, 0, 1, 0)
    assert module_weight(P, "twist1:natural").coeffs == (2, 0, 0, 0)
    assert module_weight(P, "natural*wedge2").coeffs == (1, 1, 0, 0)
    with pytest.raises(ValueError):
        module_weight(P, "wedge5")
    with pytest.raises(ValueError):
        module_weight(P, "adjoint")


def test_pair_order():
    # a transvection over F_3: (w, g)^3 = (w N(g), 1) with N(g) = 0
    g = np.array([[1, 1], [0, 1]], dtype=np.int64)
    assert pair_order(3, g, np.array([1, 0])) == 3
    # an element of order 2 in GL_2(3) fixing e_1 gives order 6
    h = np.array([[1, 0], [0, 2]], dtype=np.int64)
    assert pair_order(3, h, np.array([1, 0])) == 6
    assert pair_order(3, h, np.array([0, 1])) == 2


@pytest.mark.parametrize("P,module,case,order,excluded", [
    (sl(5, 2), "natural", "b", 5, 10),
    (sl(5, 2), "wedge2", "b", 5, 10),
    (sl(4, 3), "natural", "b", 13, 39),
    (su(4, 3), "natural", "b", 7, 21),
    (sl(5, 4), "natural", "a", 17, 34),
    (sl(6, 2), "wedge3", "b", 21, 42),
])
def test_pipeline_cases(P, module, case, order, excluded):
    res = run_pipeline(P, module)
    assert res.ok, res.checks
    assert (res.case, res.element_order, res.excluded_order) == (case, order, excluded)
    assert res.cover_order == excluded
    assert res.to_json()["ok"]


def test_pipeline_case_c():
    res = run_pipeline(su(4, 2))
    assert res.ok and res.case == "c" and res.cover_order == 8


def test_pipeline_oracle_small():
    res = run_pipeline(sl(4, 2), oracle=True)
    assert res.ok and res.checks["oracle_excludes_p_order"]
    assert res.case == "b" and res.cover_order == 14


def test_frobenius_subgroup_l42():
    F, K, c = frobenius_subgroup(sl(4, 2))
    rep = frobenius_minpoly_check(F, K, c, c_order=4)
    assert rep.kernel_order == 5 and rep.minpoly_is_full


@pytest.mark.parametrize("P", [sl(4, 9), sl(3, 2), su(3, 3), sl(2, 4)])
def test_out_of_scope(P):
    with pytest.raises(SemisimpleError):
        run_pipeline(P)


def test_case_c_restrictions():
    with pytest.raises(SemisimpleError):
        run_pipeline(sl(4, 4))
    with pytest.raises(SemisimpleError):
        run_pipeline(su(4, 2), "wedge2")


def test_pipeline_seed_independence():
    a = run_pipeline(su(4, 3), seed=0)
    b = run_pipeline(su(4, 3), seed=7)
    assert a.ok and b.ok and a.cover_order == b.cover_order
