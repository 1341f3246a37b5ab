import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverorders.arith import largest_prime_factor
from coverorders.decomp import (
    EXCLUDED_II,
    EXPLICIT_PAIRS,
    Decomposition,
    DecompositionError,
    ExcludedPair,
    RestrictionMap,
    closed_forms,
    decompose_i,
    decompose_ii,
    explicit_pairs_report,
    has_small_j_rule,
    restrict_i,
    step_prime_i,
    tables_json,
    verify_decomposition,
)


def independent_check(dec, rmap=None, kind=None):
    """Invariants restated from scratch, without the module's verifier."""
    parts = dec.parts
    assert sum(parts) == dec.n
    assert all(math.gcd(a, b) == 1 for i, a in enumerate(parts) for b in parts[i + 1:])
    assert parts.count(1) <= 1
    if kind == "II":
        assert not set(parts) & {2, 3}
    if kind == "I":
        assert all(largest_prime_factor(x) * 2 <= dec.n + 1 for x in parts if x > 1)
    if rmap is not None:
        assert sum(rmap.j_parts) == rmap.j
        assert len(set(rmap.eta)) == len(rmap.eta)
        for ji, idx in zip(rmap.j_parts, rmap.eta):
            target = parts[idx]
            assert 1 <= ji <= target
            assert target == 1 or math.gcd(ji, target) > 1


def test_kind_i_examples():
    assert decompose_i(5).parts == (1, 4)
    assert decompose_i(6).parts == (1, 2, 3)
    assert decompose_i(7).parts == (1, 6)
    # 13 is the largest prime in (9, 27/2]; 26 - 13 = 13 continues with 7
    assert step_prime_i(26) == 13
    assert decompose_i(26).parts == (1, 2, 3, 7, 13)


def test_kind_i_restriction_examples():
    r = restrict_i(decompose_i(5), 3)
    assert (r.j_parts, r.eta) == ((1, 2), (0, 1))
    r = restrict_i(decompose_i(7), 5)
    assert (r.j_parts, [decompose_i(7).parts[i] for i in r.eta]) == ((1, 4), [1, 6])
    r = restrict_i(decompose_i(9), 6)
    assert (r.j_parts, [decompose_i(9).parts[i] for i in r.eta]) == ((6,), [8])


@pytest.mark.parametrize("n", list(range(5, 121)))
def test_kind_i_all_j(n):
    dec = decompose_i(n)
    assert verify_decomposition(dec) == []
    independent_check(dec, kind="I")
    for j in range(1, n + 1):
        rmap = restrict_i(dec, j)
        assert verify_decomposition(dec, rmap) == []
        independent_check(dec, rmap, kind="I")


def test_kind_i_rejects():
    with pytest.raises(DecompositionError):
        decompose_i(4)
    with pytest.raises(DecompositionError):
        restrict_i(Decomposition(6, (1, 5), "I"), 2)
    with pytest.raises(DecompositionError):
        restrict_i(decompose_i(8), 9)


def test_kind_ii_examples():
    dec, rmap = decompose_ii(21, 6)
    assert dec.parts == (1, 5, 4, 11)
    assert rmap.j_parts == (1, 5) and rmap.eta == (0, 1)
    dec, rmap = decompose_ii(7, 2)
    assert dec.parts == (6, 1) and rmap.j_parts == (2,) and dec.parts[rmap.eta[0]] == 6
    dec, rmap = decompose_ii(8, 4)
    assert dec.parts == (8,) and rmap.j_parts == (4,)


@pytest.mark.parametrize("pair", sorted(EXCLUDED_II))
def test_excluded_pairs(pair):
    with pytest.raises(ExcludedPair):
        decompose_ii(*pair)


@pytest.mark.parametrize("n", list(range(5, 151)))
def test_kind_ii_all_j(n):
    for j in range(1, n + 1):
        if (n, j) in EXCLUDED_II:
            continue
        dec, rmap = decompose_ii(n, j)
        assert verify_decomposition(dec, rmap) == []
        independent_check(dec, rmap, kind="II")
        assert rmap.j == j


@given(st.integers(min_value=113, max_value=2000), st.data())
def test_kind_ii_large_n(n, data):
    j = data.draw(st.integers(min_value=1, max_value=n))
    dec, rmap = decompose_ii(n, j)
    independent_check(dec, rmap, kind="II")


def test_kind_ii_trace_records_route():
    trace = []
    decompose_ii(200, 61, trace)
    assert trace[0][0] == "split_r" and trace[-1][0] == "result"


def test_kind_ii_j_equals_n_uses_all_parts():
    dec, rmap = decompose_ii(40, 40)
    assert sorted(rmap.eta) == list(range(len(dec.parts)))


def test_explicit_pairs_audit():
    assert len(EXPLICIT_PAIRS) == 61
    assert explicit_pairs_report() == []
    assert (76, 10) in EXPLICIT_PAIRS
    for (n, j), (nj, jp) in EXPLICIT_PAIRS.items():
        assert 2 * j <= n <= 112
        assert not has_small_j_rule(n, j)
        # every row is needed: the three closed forms all fail there
        for _, parts, idx in closed_forms(n, j):
            dec = Decomposition(n, parts, "II")
            rm = RestrictionMap(j, tuple(parts[i] for i in idx), tuple(idx))
            assert min(parts) < 1 or verify_decomposition(dec, rm)


def test_verifier_messages():
    assert any("not pairwise coprime" in v for v in verify_decomposition(Decomposition(6, (2, 4), "I")))
    assert any("forbidden part 2 or 3" in v for v in verify_decomposition(Decomposition(8, (3, 5), "II")))
    assert any("more than one part equals 1" in v for v in verify_decomposition(Decomposition(7, (1, 1, 5), "I")))
    assert verify_decomposition(Decomposition(5, (1, 4), "I")) == []


def test_tables_export():
    data = tables_json()
    assert len(data["explicit_pairs"]) == 61
    assert data["small_j_rules"]
