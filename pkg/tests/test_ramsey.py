from itertools import combinations, product

import pytest

from cubeforge.colorings import find_mono_ap, find_mono_cube
from cubeforge.errors import BudgetError, DomainError, SearchTimeout
from cubeforge.ramsey import (
    RamseyResult,
    census_bound,
    census_small_sumsets,
    check_against_baseline,
    consistency_h_le_w,
    hilbert_number,
    load_baselines,
    vdw_number,
    write_baselines,
)

from oracles import all_colorings_have, has_mono_ap, has_mono_cube, subset_sums


def test_baseline_file_contents():
    b = load_baselines()
    assert b[("vdw", 3, 2)] == 9
    assert b[("vdw", 4, 2)] == 35
    assert b[("hilbert", 2, 2)] == 11


def test_baseline_roundtrip(tmp_path):
    p = tmp_path / "b.csv"
    write_baselines({("vdw", 3, 2): 9, ("hilbert", 1, 2): 3}, p)
    assert load_baselines(p) == {("vdw", 3, 2): 9, ("hilbert", 1, 2): 3}


def test_vdw_small_values_two_sided():
    res = vdw_number(3, 2, 20)
    assert res.value == 9 and res.exact
    assert str(res.witness) == "00110011"
    assert find_mono_ap(res.witness, 3) is None
    assert check_against_baseline(res) is True
    assert vdw_number(2, 2, 10).value == 3
    assert vdw_number(2, 3, 10).value == 4
    assert vdw_number(1, 2, 10).value == 1


def test_vdw_matches_full_enumeration_oracle():
    # every 2-coloring of [9] has a mono 3-AP, some coloring of [8] does not
    assert all_colorings_have(9, 2, lambda c: has_mono_ap(c, 3))
    assert not all_colorings_have(8, 2, lambda c: has_mono_ap(c, 3))


def test_vdw_lower_bound_only():
    res = vdw_number(4, 2, 20)
    assert res.value is None and res.largest_good == 20
    assert find_mono_ap(res.witness, 4) is None
    assert check_against_baseline(res) is None


def test_vdw_timeout_is_distinct():
    with pytest.raises(SearchTimeout):
        vdw_number(4, 2, 40, budget=1000)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("CUBEFORGE_BUDGET", "200")
    with pytest.raises(SearchTimeout):
        vdw_number(4, 2, 40)


def test_hilbert_values():
    assert hilbert_number(1, 2, 10).value == 3
    res = hilbert_number(2, 2, 30)
    assert res.value == 11
    assert find_mono_cube(res.witness, 2) is None
    assert check_against_baseline(res) is True
    assert all_colorings_have(11, 2, lambda c: has_mono_cube(c, 2))
    assert not all_colorings_have(10, 2, lambda c: has_mono_cube(c, 2))


def test_hilbert_lower_bound_only():
    res = hilbert_number(2, 2, 8)
    assert not res.exact and res.largest_good == 8
    assert find_mono_cube(res.witness, 2) is None


def test_domain_errors():
    with pytest.raises(DomainError):
        vdw_number(0, 2, 5)
    with pytest.raises(DomainError):
        hilbert_number(2, 1, 5)


def test_census_examples():
    assert census_small_sumsets(10, 3, 6).count == 0
    res = census_small_sumsets(10, 3, 7)
    assert res.count == 20 and res.passed
    # the 20 sets are exactly the triples with c = a + b
    triples = [S for S in combinations(range(1, 11), 3) if S[2] == S[0] + S[1]]
    assert len(triples) == 20
    assert all(len(subset_sums(S)) == 7 for S in triples)
    with pytest.raises(BudgetError):
        census_small_sumsets(60, 6, 30, cap=1000)
    with pytest.raises(DomainError):
        census_small_sumsets(10, 3, 5)


def test_census_against_oracle():
    for n, k, u in [(8, 2, 4), (9, 3, 9), (7, 4, 12)]:
        count = sum(1 for S in combinations(range(1, n + 1), k) if len(subset_sums(S)) <= u)
        assert census_small_sumsets(n, k, u).count == count


def test_census_bound_is_base2():
    assert census_bound(2, 1, 4) == pytest.approx(2**2 * 4**2)


def test_consistency_reports():
    rep = consistency_h_le_w(1, 2, h_nmax=10, w_nmax=10)
    assert rep.h.value == 3 and rep.w_repeat_free.value == 3 and rep.status == "holds"
    rep = consistency_h_le_w(2, 2, h_nmax=30, w_nmax=40)
    assert rep.h.value == 11 and rep.w_repeat_free.value == 35 and rep.status == "holds"
    assert rep.repeat_free_length == 4 and rep.literal_length == 1
    rep = consistency_h_le_w(2, 2, h_nmax=5, w_nmax=40)
    assert rep.status == "inconclusive"


def test_result_dict_shape():
    d = vdw_number(3, 2, 20).to_dict()
    assert set(d) == {"kind", "k", "r", "value", "exact", "largest_good", "witness", "nodes", "seconds"}
    assert isinstance(vdw_number(3, 2, 20), RamseyResult)


def test_canonical_witness_is_lexicographically_smallest():
    # among all good 2-colorings of [8] with color(1) = 0, 00110011 is the smallest
    good = ["".join(map(str, c)) for c in product((0, 1), repeat=8)
            if c[0] == 0 and not has_mono_ap(c, 3)]
    assert min(good) == "00110011"
