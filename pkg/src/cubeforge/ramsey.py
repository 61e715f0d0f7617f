"""Exact small Van der Waerden numbers W(k, r) and Hilbert cube numbers h(k, r).

Both are computed by one exhaustive search over canonical colorings that
records the longest good prefix.  If that prefix has length L < n_max, then
a good coloring of [L] exists (the witness) and the exhausted tree proves
none of [L + 1] does, so the number is exactly L + 1.
"""
from __future__ import annotations

import math
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from math import comb
from pathlib import Path

from .colorings import (
    Coloring,
    ap_checker,
    cube_checker,
    find_mono_ap,
    find_mono_cube,
    search_good_colorings,
)
from .errors import BudgetError, DomainError
from .sumsets import restricted_sumset

DEFAULT_CENSUS_CAP = 2 * 10**6


@dataclass(frozen=True)
class RamseyResult:
    kind: str                      # "vdw" or "hilbert"
    k: int
    r: int
    value: int | None              # exact value, or None when lower-bound-only
    largest_good: int              # largest n with a good coloring found
    witness: Coloring | None       # lexicographically smallest good coloring of [largest_good]
    nodes: int
    seconds: float = field(compare=False)

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "r": self.r,
            "value": self.value,
            "exact": self.exact,
            "largest_good": self.largest_good,
            "witness": str(self.witness) if self.witness is not None else None,
            "nodes": self.nodes,
            "seconds": self.seconds,
        }


def _result(kind, k, r, n_max, outcome, t0, verify) -> RamseyResult:
    witness = Coloring(r, outcome.witness) if outcome.longest > 0 else None
    if witness is not None:
        assert verify(witness), "extremal witness failed its detector"
    value = None if outcome.complete else outcome.longest + 1
    return RamseyResult(kind, k, r, value, outcome.longest, witness, outcome.nodes,
                        time.perf_counter() - t0)


def vdw_number(k: int, r: int, n_max: int, *, budget: int | None = None) -> RamseyResult:
    """W(k, r) if it is at most ``n_max``; otherwise a lower-bound-only result.

    W(1, r) = 1 and W(2, r) = r + 1 are returned directly.
    """
    if k < 1 or r < 2:
        raise DomainError("vdw_number needs k >= 1 and r >= 2")
    t0 = time.perf_counter()
    if k <= 2:
        w = 1 if k == 1 else r + 1
        if w <= n_max:
            wit = Coloring(r, tuple(range(w - 1)))
            assert find_mono_ap(wit, k) is None
            return RamseyResult("vdw", k, r, w, w - 1, wit if w > 1 else None, 0, time.perf_counter() - t0)
        good = min(n_max, w - 1)
        wit = Coloring(r, tuple(range(good)))
        return RamseyResult("vdw", k, r, None, good, wit, 0, time.perf_counter() - t0)
    out = search_good_colorings(n_max, r, ap_checker(k, n_max), budget=budget)
    return _result("vdw", k, r, n_max, out, t0, lambda c: find_mono_ap(c, k) is None)


def hilbert_number(k: int, r: int, n_max: int, *, budget: int | None = None) -> RamseyResult:
    """h(k, r): least n forcing a monochromatic affine k-cube (distinct
    positive generators) in every r-coloring of [n]."""
    if k < 1 or r < 2:
        raise DomainError("hilbert_number needs k >= 1 and r >= 2")
    t0 = time.perf_counter()
    out = search_good_colorings(n_max, r, cube_checker(k), budget=budget)
    return _result("hilbert", k, r, n_max, out, t0,
                   lambda c: find_mono_cube(c, k, budget=budget) is None)


# --- Erdos-Spencer census --------------------------------------------------


@dataclass(frozen=True)
class CensusResult:
    n: int
    k: int
    u: int
    count: int
    bound: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def census_bound(n: int, k: int, u: int) -> float:
    """(k n)^(log2 u) * u^(2k), in floating point (inf on overflow)."""
    try:
        return float((k * n) ** math.log2(u) * float(u) ** (2 * k))
    except OverflowError:
        return math.inf


def census_profile(n: int, k: int, *, cap: int | None = None) -> list[int]:
    """Sorted ``|Sigma*S|`` over all k-subsets S of [n]."""
    if k < 1 or n < 1:
        raise DomainError("census needs n, k >= 1")
    cap = DEFAULT_CENSUS_CAP if cap is None else cap
    if comb(n, k) > cap:
        raise BudgetError(f"C({n},{k}) = {comb(n, k)} subsets exceed the cap of {cap}")
    return sorted(len(restricted_sumset(S)) for S in combinations(range(1, n + 1), k))


def census_from_profile(n: int, k: int, u: int, profile: list[int]) -> CensusResult:
    if 2 * u < k * (k + 1):
        raise DomainError("census needs u >= k(k+1)/2")
    count = bisect_right(profile, u)
    bound = census_bound(n, k, u)
    return CensusResult(n, k, u, count, bound, count <= bound)


def census_small_sumsets(n: int, k: int, u: int, *, cap: int | None = None) -> CensusResult:
    """Count k-subsets S of [n] with |Sigma*S| <= u and compare with the bound."""
    if 2 * u < k * (k + 1):
        raise DomainError("census needs u >= k(k+1)/2")
    return census_from_profile(n, k, u, census_profile(n, k, cap=cap))


# --- eq. h <= W consistency ------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    k: int
    r: int
    h: RamseyResult
    w_repeat_free: RamseyResult
    repeat_free_length: int
    literal_length: int
    w_literal: RamseyResult | None
    status: str                    # "holds", "violated" or "inconclusive"
    literal_status: str            # same, for h(k, r) <= W(C(k, 2), r)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "h": self.h.to_dict(),
            "w_repeat_free": self.w_repeat_free.to_dict(),
            "repeat_free_length": self.repeat_free_length,
            "literal_length": self.literal_length,
            "w_literal": self.w_literal.to_dict() if self.w_literal else None,
            "status": self.status,
            "literal_status": self.literal_status,
        }


def _compare(h: RamseyResult, w: RamseyResult | None) -> str:
    if w is None:
        return "inconclusive"
    if h.exact and w.exact:
        return "holds" if h.value <= w.value else "violated"
    if w.exact and not h.exact and h.largest_good + 1 > w.value:
        return "violated"
    if h.exact and not w.exact and h.value <= w.largest_good + 1:
        return "holds"
    return "inconclusive"


def consistency_h_le_w(k: int, r: int, *, h_nmax: int = 60, w_nmax: int = 60,
                       budget: int | None = None) -> ConsistencyReport:
    """Check h(k, r) <= W(k(k+1)/2 + 1, r).

    An AP of length k(k+1)/2 + 1 with difference d is the cube
    ``x0 + Sigma*{d, 2d, ..., kd}``; with distinct generators that is the
    shortest AP guaranteed to contain a k-cube.  The literal form with
    ``C(k, 2)`` terms is also evaluated when that length is at least 1.
    """
    h = hilbert_number(k, r, h_nmax, budget=budget)
    rf_len = k * (k + 1) // 2 + 1
    w = vdw_number(rf_len, r, w_nmax, budget=budget)
    lit_len = comb(k, 2)
    w_lit = vdw_number(lit_len, r, w_nmax, budget=budget) if lit_len >= 1 else None
    return ConsistencyReport(k, r, h, w, rf_len, lit_len, w_lit, _compare(h, w), _compare(h, w_lit))


# --- baselines -------------------------------------------------------------

BASELINE_VERSION = 1


def baseline_path() -> Path:
    return Path(str(resources.files("cubeforge") / "data" / "baselines.csv"))


def load_baselines(path=None) -> dict[tuple[str, int, int], int]:
    """Read ``kind,k,r,value`` lines; ``#`` lines are comments."""
    path = baseline_path() if path is None else Path(path)
    out = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        kind, k, r, value = (t.strip() for t in line.split(","))
        out[(kind, int(k), int(r))] = int(value)
    return out


def write_baselines(values: dict[tuple[str, int, int], int], path) -> None:
    lines = [f"# cubeforge baselines v{BASELINE_VERSION}", "# kind,k,r,value"]
    lines += [f"{kind},{k},{r},{v}" for (kind, k, r), v in sorted(values.items())]
    Path(path).write_text("\n".join(lines) + "\n")


def check_against_baseline(res: RamseyResult, baselines=None) -> bool | None:
    """True/False on match/drift, None when no baseline is recorded."""
    baselines = load_baselines() if baselines is None else baselines
    key = (res.kind, res.k, res.r)
    if key not in baselines or not res.exact:
        return None
    return baselines[key] == res.value
