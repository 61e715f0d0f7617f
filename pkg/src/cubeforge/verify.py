"""Batch driver for the cross-module bound checks.

A config maps suite names to their parameters::

    {"suites": {"chain": {"trials": 500, "max_size": 12},
                "census": {"n_max": 14, "k_max": 3, "u_max": 20}}}

Missing parameters take the defaults below; an empty config runs nothing.
Set sampling uses ``random.Random(seed)`` (Mersenne Twister).
"""
from __future__ import annotations

import json
import random
import time
from itertools import combinations, product
from math import comb, gcd
from pathlib import Path

import numpy as np

from .colorings import Coloring, product_coloring
from .errors import CubeforgeError, NotFoundError
from .gaps import Gap, containing_ap, decompose_rank2, enumerate_gap, find_collision
from .grids import GridSet, verify_dense_gap_bound
from .ramsey import DEFAULT_CENSUS_CAP, census_from_profile, census_profile, census_small_sumsets
from .sidon import erdos_turan_sidon, final_size_floor, sidon_cubic_lowerbound
from .sumsets import chain_lower_bound, chain_witness, m_fold_restricted_sumset, restricted_sumset

SUITE_DEFAULTS = {
    "chain": {"trials": 500, "max_size": 12, "max_element": 200, "seed": 0},
    "mfold": {"trials": 200, "max_size": 8, "max_m": 4, "max_element": 60, "seed": 1},
    "census": {"n_max": 12, "k_max": 3, "u_max": 20, "cap": DEFAULT_CENSUS_CAP},
    "gap": {"trials": 200, "max_extent": 6, "max_difference": 50, "k": 3, "seed": 2},
    "dense_gap": {"max_side": 4},
    "sidon": {"primes": [11, 13, 17, 19, 23]},
    "product": {"n": 4},
}

DEFAULT_CONFIG = {"suites": {name: {} for name in SUITE_DEFAULTS}}


def subset_sums_bruteforce(values) -> np.ndarray:
    """Every one of the 2^|A| subset sums (with repetition), by doubling."""
    sums = np.zeros(1, dtype=np.int64)
    for a in values:
        sums = np.concatenate([sums, sums + a])
    return sums


def _suite_chain(p):
    rng = random.Random(p["seed"])
    bad = 0
    for _ in range(p["trials"]):
        k = rng.randint(1, p["max_size"])
        A = rng.sample(range(1, p["max_element"] + 1), k)
        S = restricted_sumset(A)
        brute = np.unique(subset_sums_bruteforce(A))
        ok = (len(S) >= chain_lower_bound(k) and list(S) == brute.tolist()
              and all(x in S for x in chain_witness(A)))
        bad += not ok
    return {"checked": p["trials"], "violations": bad}


def _suite_mfold(p):
    rng = random.Random(p["seed"])
    bad = 0
    for _ in range(p["trials"]):
        k = rng.randint(1, p["max_size"])
        m = rng.randint(1, p["max_m"])
        A = rng.sample(range(1, p["max_element"] + 1), k)
        size = len(m_fold_restricted_sumset(A, m))
        bad += size < m * comb(k + 1, 2) - m + 1
    return {"checked": p["trials"], "violations": bad}


def _suite_census(p):
    bad = checked = 0
    for n in range(1, p["n_max"] + 1):
        for k in range(1, min(p["k_max"], n) + 1):
            profile = census_profile(n, k, cap=p["cap"])
            for u in range(max(1, k * (k + 1) // 2), p["u_max"] + 1):
                checked += 1
                bad += not census_from_profile(n, k, u, profile).passed
    exact = census_small_sumsets(10, 3, 6).count == 0 and census_small_sumsets(10, 3, 7).count == 20
    return {"checked": checked, "violations": bad + (not exact)}


def random_symmetric_proper_gap(rng: random.Random, max_extent: int, max_difference: int) -> Gap:
    """Rejection-sample a symmetric rank-2 GAP proper on its closed index box."""
    while True:
        d1 = rng.choice([-1, 1]) * rng.randint(1, max_difference)
        d2 = rng.choice([-1, 1]) * rng.randint(1, max_difference)
        Q = Gap.symmetric((d1, d2), (rng.randint(1, max_extent), rng.randint(1, max_extent)))
        if Q.closed_box().is_proper():
            return Q


def check_gap(Q: Gap, k: int) -> bool:
    """Partition, containment, length bound and Euclid divisibility for one GAP."""
    d1, d2 = Q.differences
    m, n = Q.upper
    dec = decompose_rank2(Q)
    full = enumerate_gap(Q.closed_box())
    total = sum(len(part) for part in dec.parts)
    ok = total == len(full) and dec.union() == full and 0 in dec.parts[4]
    R = containing_ap(Q)
    terms = set(R.terms())
    g = gcd(d1, d2)
    ok &= all(x in terms for x in full)
    ok &= R.length <= 1 + 2 * (m * abs(d1) + n * abs(d2)) // g
    try:
        w = find_collision(d1, d2, m, n, k)
    except NotFoundError:
        return ok
    ok &= w.x != w.y and w.x[0] * d1 + w.x[1] * d2 == w.y[0] * d1 + w.y[1] * d2
    ok &= abs(d1) * abs(w.x[0] - w.y[0]) == abs(d2) * abs(w.x[1] - w.y[1])
    ok &= abs(w.x[1] - w.y[1]) % (abs(d1) // g) == 0
    return ok


def _suite_gap(p):
    rng = random.Random(p["seed"])
    bad = sum(not check_gap(random_symmetric_proper_gap(rng, p["max_extent"], p["max_difference"]), p["k"])
              for _ in range(p["trials"]))
    return {"checked": p["trials"], "violations": bad}


def _suite_dense_gap(p):
    rows = []
    for a in range(1, p["max_side"] + 1):
        for b in range(a, p["max_side"] + 1):
            rep = verify_dense_gap_bound(GridSet.full_box((a, b)), 1)
            rows.append({"box": [a, b], "sumset": rep.sumset_size, "ratio_cubic": rep.sumset_size / rep.size**3})
    ratios = [r["ratio_cubic"] for r in rows]
    return {"checked": len(rows), "violations": 0, "measured": {
        "rows": rows, "ratio_spread": max(ratios) / min(ratios)}}


def _suite_sidon(p):
    bad = 0
    consts = {}
    for prime in p["primes"]:
        A = erdos_turan_sidon(prime)
        tr = sidon_cubic_lowerbound(A)
        n = len(A)
        gain = (comb(n // 4, 2) + 1) // 2
        ok = all(2 * s.sumset_after >= 3 * s.sumset_before for s in tr.phase_steps("small"))
        ok &= all(s.sumset_after - s.sumset_before >= gain for s in tr.phase_steps("large"))
        ok &= tr.final_sumset >= final_size_floor(n)
        full = len(restricted_sumset(A))
        ok &= full >= tr.final_sumset and full <= n * A.max + 1
        bad += not ok
        consts[str(prime)] = tr.constant
    return {"checked": len(p["primes"]), "violations": bad, "measured": {"constant": consts}}


def product_law_violations(n: int) -> int:
    """Exhaustive check over all pairs of 2-colorings of [n] and all subsets."""
    bad = 0
    colorings = [Coloring(2, c) for c in product((0, 1), repeat=n)]
    subsets = [s for size in range(1, n + 1) for s in combinations(range(1, n + 1), size)]
    for c1 in colorings:
        for c2 in colorings:
            pc = product_coloring(c1, c2)
            for s in subsets:
                lhs = pc.is_monochromatic(s)
                rhs = c1.is_monochromatic(s) and c2.is_monochromatic(s)
                bad += lhs != rhs
    return bad


def _suite_product(p):
    n = p["n"]
    return {"checked": 4**n, "violations": product_law_violations(n)}


SUITES = {
    "chain": _suite_chain,
    "mfold": _suite_mfold,
    "census": _suite_census,
    "gap": _suite_gap,
    "dense_gap": _suite_dense_gap,
    "sidon": _suite_sidon,
    "product": _suite_product,
}


def verify_bounds(config: dict | None = None) -> dict:
    """Run the configured suites; each reports passed/checked/violations.

    A suite that raises is reported as failed with the error message, and
    the remaining suites still run.
    """
    config = DEFAULT_CONFIG if config is None else config
    report = []
    for name, params in (config.get("suites") or {}).items():
        if name not in SUITES:
            report.append({"suite": name, "passed": False, "error": "unknown suite"})
            continue
        merged = {**SUITE_DEFAULTS[name], **(params or {})}
        t0 = time.perf_counter()
        try:
            row = SUITES[name](merged)
            row["passed"] = row["violations"] == 0
        except (CubeforgeError, AssertionError) as exc:
            row = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        row = {"suite": name, **row, "params": merged, "seconds": time.perf_counter() - t0}
        report.append(row)
    return {"suites": report, "passed": all(r["passed"] for r in report)}


def load_config(path) -> dict:
    text = Path(path).read_text().strip()
    return json.loads(text) if text else {}
