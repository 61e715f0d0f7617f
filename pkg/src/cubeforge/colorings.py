"""Colorings of [n], monochromatic AP / affine cube detection, and the
backtracking search for colorings avoiding them.

Positions are 1-based.  A color class is kept as a Python-int bitmask with
bit ``i`` set when position ``i`` has that color.
"""
from __future__ import annotations

import json
import math
import os
import sys
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .errors import DomainError, SearchTimeout, ShapeError
from .intset import ApWitness, IntSet
from .rng import ALGORITHM, derive_seed, uniform_below
from .sumsets import restricted_sumset

DEFAULT_NODE_BUDGET = 10**9


def default_budget() -> int:
    env = os.environ.get("CUBEFORGE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class Coloring:
    r: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.r < 1:
            raise DomainError("a coloring needs r >= 1")
        if any(not 0 <= c < self.r for c in self.colors):
            raise DomainError(f"colors must lie in [0, {self.r})")

    @property
    def n(self) -> int:
        return len(self.colors)

    def __call__(self, i: int) -> int:
        return self.colors[i - 1]

    def class_masks(self) -> list[int]:
        masks = [0] * self.r
        for i, c in enumerate(self.colors, start=1):
            masks[c] |= 1 << i
        return masks

    def is_monochromatic(self, positions) -> bool:
        return len({self.colors[p - 1] for p in positions}) <= 1

    def to_text(self) -> str:
        if self.r > 10:
            raise DomainError("the digit format only covers r <= 10")
        return "".join(map(str, self.colors))

    def __str__(self) -> str:
        return self.to_text() if self.r <= 10 else str(list(self.colors))


def parse_coloring(text: str, r: int | None = None) -> Coloring:
    """Single line of digits, the color of 1 first."""
    line = "".join(l.split("#", 1)[0].strip() for l in text.splitlines())
    if not line.isdigit():
        raise DomainError("a coloring is a single line of digits")
    colors = tuple(int(ch) for ch in line)
    r = r if r is not None else max(max(colors) + 1, 2)
    return Coloring(r, colors)


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    """``r2 * c1(i) + c2(i)`` with ``r1 * r2`` colors."""
    if c1.n != c2.n:
        raise ShapeError("product of colorings of different lengths")
    return Coloring(c1.r * c2.r, tuple(c2.r * a + b for a, b in zip(c1.colors, c2.colors)))


def random_coloring(n: int, r: int, seed: int) -> Coloring:
    """Uniform coloring of [n] from the SplitMix64 stream of ``seed``."""
    if r < 2:
        raise DomainError("random_coloring needs r >= 2")
    return Coloring(r, tuple(uniform_below(seed, n, r).tolist()))


# --- detection -------------------------------------------------------------


def find_mono_ap(c: Coloring, k: int) -> ApWitness | None:
    """Monochromatic k-term AP with the smallest difference, then start."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if c.n == 0:
        return None
    if k == 1:
        return ApWitness(1, 1, 1)
    masks = c.class_masks()
    for d in range(1, (c.n - 1) // (k - 1) + 1):
        starts = 0
        for mask in masks:
            run = mask
            for j in range(1, k):
                run &= mask >> (j * d)
                if not run:
                    break
            starts |= run
        if starts:
            return ApWitness((starts & -starts).bit_length() - 1, d, k)
    return None


@dataclass(frozen=True)
class CubeWitness:
    x0: int
    A: IntSet
    realized: IntSet
    color: int | None = None

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "A": list(self.A.elements),
            "realized": list(self.realized.elements),
            "color": self.color,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _Nodes:
    __slots__ = ("count", "budget")

    def __init__(self, budget: int):
        self.count = 0
        self.budget = budget

    def tick(self):
        self.count += 1
        if self.count > self.budget:
            raise SearchTimeout(f"node budget of {self.budget} exhausted", self.count)


def _cube_inside(allowed: int, k: int, limit: int, cap: float, nodes: _Nodes) -> list[int] | None:
    """Increasing positive A with |A| = k, sum(A) <= limit, Sigma*A inside ``allowed``.

    ``allowed`` is a bitmask with bit 0 set.  Returns the lexicographically
    smallest A, or None.
    """
    A: list[int] = []

    def dfs(sums: int, last: int, total: int) -> bool:
        j = k - len(A)
        if j == 0:
            return True
        # j more elements, all > last: the smallest is a, the rest >= a+1, ...
        room = limit - total
        a_max = (room - (j - 1) * j // 2) // j
        for a in range(last + 1, a_max + 1):
            nodes.tick()
            if not (allowed >> a) & 1:
                continue
            nxt = sums | (sums << a)
            if nxt & ~allowed:
                continue
            if nxt.bit_count() > cap:
                continue
            A.append(a)
            if dfs(nxt, a, total + a):
                return True
            A.pop()
        return False

    return list(A) if dfs(1, 0, 0) else None


def find_mono_cube(c: Coloring, k: int, sumset_cap: float | None = None,
                   *, budget: int | None = None) -> CubeWitness | None:
    """Monochromatic affine k-cube ``x0 + Sigma*A`` inside [1, n].

    ``A`` is a set of distinct positive integers.  The search is exhaustive
    (smallest ``x0`` first, then lexicographically smallest ``A``) unless
    ``sumset_cap`` restricts it to cubes with at most that many points.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    cap = math.inf if sumset_cap is None else sumset_cap
    nodes = _Nodes(default_budget() if budget is None else budget)
    masks = c.class_masks()
    min_span = k * (k + 1) // 2
    for x0 in range(1, c.n - min_span + 1):
        col = c(x0)
        A = _cube_inside(masks[col] >> x0, k, c.n - x0, cap, nodes)
        if A is not None:
            A = IntSet(tuple(A))
            w = CubeWitness(x0, A, restricted_sumset(A).translate(x0), col)
            assert all(c(p) == col for p in w.realized)
            return w
    return None


def cube_ending_at(masks: list[int], p: int, color: int, k: int, nodes: _Nodes) -> list[int] | None:
    """A with ``p - Sigma*A`` inside the color class (p included), or None."""
    mask = masks[color] | (1 << p)
    # bit s of ``allowed`` <=> position p - s has the color
    allowed = _reverse_bits(mask, p)
    return _cube_inside(allowed, k, p - 1, math.inf, nodes)


def _reverse_bits(mask: int, p: int) -> int:
    """Bit s of the result is bit p - s of ``mask`` (for 0 <= s < p)."""
    width = p + 1
    s = format(mask & ((1 << width) - 1), f"0{width}b")
    # s[0] is bit p, s[-1] is bit 0; reading s reversed as binary puts bit p at 0
    return int(s[::-1], 2) & ((1 << p) - 1)


# --- backtracking ----------------------------------------------------------

Check = Callable[[list, int, int, "_Nodes"], bool]


@dataclass
class SearchOutcome:
    longest: int           # longest good prefix found (capped at n_max)
    witness: tuple          # lexicographically first good coloring of that length
    nodes: int
    complete: bool          # True when a good coloring of length n_max exists


def search_good_colorings(n_max: int, r: int, creates_mono: Check, *,
                          budget: int | None = None) -> SearchOutcome:
    """Depth-first search over canonical r-colorings of [1..n_max].

    Positions are filled left to right, colors in increasing order, and a
    color may be used only if every smaller color already occurs
    (first-occurrence canonical form, which for r = 2 fixes color(1) = 0 and
    counts each coloring once up to the swap).  ``creates_mono(masks, p, c,
    nodes)`` decides whether giving position p color c closes a
    monochromatic pattern whose largest element is p.

    The first coloring that reaches a new depth is the lexicographically
    smallest good coloring of that length.  The search stops early only when
    depth ``n_max`` is reached; otherwise it exhausts the tree.
    """
    nodes = _Nodes(default_budget() if budget is None else budget)
    masks = [0] * r
    colors: list[int] = []
    best_len = 0
    best: tuple = ()

    def dfs(p: int, used: int) -> bool:
        nonlocal best_len, best
        if p - 1 > best_len:
            best_len = p - 1
            best = tuple(colors)
        if p > n_max:
            return True
        for c in range(min(used + 1, r)):
            nodes.tick()
            if creates_mono(masks, p, c, nodes):
                continue
            masks[c] |= 1 << p
            colors.append(c)
            if dfs(p + 1, max(used, c + 1)):
                return True
            colors.pop()
            masks[c] &= ~(1 << p)
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n_max + 100))
    try:
        complete = dfs(1, 0)
    finally:
        sys.setrecursionlimit(old)
    return SearchOutcome(best_len, best, nodes.count, complete)


def ap_checker(k: int, n_max: int) -> Check:
    """``creates_mono`` for k-term APs, with the AP masks ending at each p precomputed."""
    ends = [[] for _ in range(n_max + 2)]
    if k >= 2:
        for p in range(1, n_max + 1):
            for d in range(1, (p - 1) // (k - 1) + 1):
                m = 0
                for j in range(1, k):
                    m |= 1 << (p - j * d)
                ends[p].append(m)

    def creates_mono(masks, p, c, nodes):
        if k == 1:
            return True
        cm = masks[c]
        for m in ends[p]:
            if cm & m == m:
                return True
        return False

    return creates_mono


def cube_checker(k: int) -> Check:
    def creates_mono(masks, p, c, nodes):
        return cube_ending_at(masks, p, c, k, nodes) is not None

    return creates_mono


def find_ap_free_coloring(n: int, k: int, r: int, *, budget: int | None = None) -> Coloring | None:
    """An r-coloring of [n] without monochromatic k-term APs, or None if none
    exists.  Raises ``SearchTimeout`` when the node budget runs out."""
    if n < 1 or k < 1:
        raise DomainError("n and k must be >= 1")
    if r < 2:
        raise DomainError("r must be >= 2")
    out = search_good_colorings(n, r, ap_checker(k, n), budget=budget)
    if not out.complete:
        return None
    col = Coloring(r, out.witness)
    assert find_mono_ap(col, k) is None
    return col


# --- Monte Carlo -----------------------------------------------------------


@dataclass(frozen=True)
class ProbabilityEstimate:
    n: int
    k: int
    trials: int
    hits: int
    estimate: float
    stderr: float
    exact: bool
    seed: int | None
    prng: str = ALGORITHM

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def estimate_mono_cube_probability(n: int, k: int, trials: int = 1000, seed: int = 0, *,
                                   exact: bool = False, budget: int | None = None) -> ProbabilityEstimate:
    """Fraction of uniform 2-colorings of [n] containing a monochromatic k-cube.

    With ``exact=True`` all ``2**n`` colorings are enumerated and the standard
    error is 0.  Otherwise trial ``t`` uses the coloring drawn from the child
    seed ``derive_seed(seed, t)``; the standard error is the binomial one,
    ``sqrt(p(1-p)/trials)``.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if exact:
        if n > 24:
            raise DomainError("exact enumeration is limited to n <= 24")
        total = 2**n
        hits = 0
        if k * (k + 1) // 2 < n:
            for colors in product((0, 1), repeat=n):
                if find_mono_cube(Coloring(2, colors), k, budget=budget) is not None:
                    hits += 1
        return ProbabilityEstimate(n, k, total, hits, hits / total, 0.0, True, None)
    if trials < 1:
        raise DomainError("trials must be >= 1")
    hits = 0
    if k * (k + 1) // 2 < n:
        for t in range(trials):
            col = random_coloring(n, 2, derive_seed(seed, t))
            if find_mono_cube(col, k, budget=budget) is not None:
                hits += 1
    p = hits / trials
    return ProbabilityEstimate(n, k, trials, hits, p, math.sqrt(p * (1 - p) / trials), False, seed)
