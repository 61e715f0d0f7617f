from cubeforge.verify import (
    SUITE_DEFAULTS,
    load_config,
    product_law_violations,
    subset_sums_bruteforce,
    verify_bounds,
)


def test_default_config_passes():
    rep = verify_bounds()
    assert rep["passed"]
    assert [r["suite"] for r in rep["suites"]] == list(SUITE_DEFAULTS)
    assert all(r["violations"] == 0 for r in rep["suites"])


def test_single_suite_and_empty_config():
    rep = verify_bounds({"suites": {"census": {"n_max": 8}}})
    assert len(rep["suites"]) == 1 and rep["suites"][0]["suite"] == "census"
    assert rep["suites"][0]["params"]["n_max"] == 8
    assert verify_bounds({}) == {"suites": [], "passed": True}


def test_partial_failure_is_reported_per_suite():
    rep = verify_bounds({"suites": {"bogus": {}, "product": {"n": 2}}})
    assert not rep["passed"]
    assert rep["suites"][0] == {"suite": "bogus", "passed": False, "error": "unknown suite"}
    assert rep["suites"][1]["passed"]
    # a module error inside a suite does not stop the others
    rep = verify_bounds({"suites": {"census": {"n_max": 10, "k_max": 4, "cap": 50}, "product": {"n": 2}}})
    assert rep["suites"][0]["passed"] is False and "BudgetError" in rep["suites"][0]["error"]
    assert rep["suites"][1]["passed"]


def test_helpers(tmp_path):
    assert sorted(subset_sums_bruteforce([1, 2]).tolist()) == [0, 1, 2, 3]
    assert product_law_violations(3) == 0
    p = tmp_path / "c.json"
    p.write_text("")
    assert load_config(p) == {}
    p.write_text('{"suites": {"chain": {"trials": 3}}}')
    assert load_config(p)["suites"]["chain"]["trials"] == 3
