"""Sidon set constructions and the two-phase greedy growth of a subset X of a
Sidon set A whose restricted sumset reaches cubic size.

Small phase: while |X| <= |A|/2 and |Sigma*X| <= C(|A|/2, 2), add the pair
whose sum b minimizes the overlap |Sigma*X ∩ (Sigma*X + b)|; each step
multiplies |Sigma*X| by at least 3/2.

Large phase: while |X| <= 3|A|/4, add the pair from the |A|/4 smallest unused
elements whose sum b maximizes the number of new values among the top |B|
elements of Sigma*X shifted by b; each step adds at least C(|A|/4, 2)/2.

All fractional sizes are floored.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb, isqrt

from .errors import DegenerateError, DomainError, NotPrimeError, PreconditionError
from .intset import IntSet
from .sumsets import is_sidon, restricted_sumset

RECHECK_EVERY = 5


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


def erdos_turan_sidon(p: int) -> IntSet:
    """``{2p*i + (i*i mod p) : 0 <= i < p}``, a Sidon set of size p in [0, 2p^2)."""
    if p > 10**6:
        raise DomainError("p is limited to 10^6")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return IntSet(tuple(2 * p * i + (i * i) % p for i in range(p)))


def mian_chowla(count: int) -> IntSet:
    """First ``count`` terms of the greedy Sidon sequence 1, 2, 4, 8, 13, 21, ..."""
    if count < 1:
        raise DomainError("count must be >= 1")
    seq = [1]
    diffs: set[int] = set()
    cand = 1
    while len(seq) < count:
        cand += 1
        new = [cand - a for a in seq]
        if any(d in diffs for d in new):
            continue
        diffs.update(new)
        seq.append(cand)
    return IntSet(tuple(seq))


@dataclass(frozen=True)
class GrowthStep:
    phase: str              # "small" or "large"
    a1: int
    a2: int
    b: int
    x_before: int
    x_after: int
    sumset_before: int
    sumset_after: int
    overlap: int | None = None     # small phase: |S ∩ (S + b)|
    new_values: int | None = None  # large phase: |(top + b) \ S|

    @property
    def ratio(self) -> float:
        return self.sumset_after / self.sumset_before


@dataclass
class GrowthTrace:
    size: int
    steps: list = field(default_factory=list)
    final_x: tuple = ()
    final_sumset: int = 1
    small_exit: str = ""    # which small-phase hypothesis failed first

    @property
    def constant(self) -> float:
        return self.final_sumset / self.size**3

    def phase_steps(self, phase: str) -> list[GrowthStep]:
        return [s for s in self.steps if s.phase == phase]

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "final_x": list(self.final_x),
            "final_sumset": self.final_sumset,
            "constant": self.constant,
            "small_exit": self.small_exit,
            "steps": [asdict(s) for s in self.steps],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class _Grower:
    """Holds A, X and the bitset of Sigma*X (relative to 0; elements >= 0)."""

    def __init__(self, A: IntSet, X=()):
        if not is_sidon(A):
            raise PreconditionError("A is not a Sidon set")
        if A.elements and A.min < 0:
            raise PreconditionError("A must consist of non-negative integers")
        X = set(X)
        if not X <= set(A.elements):
            raise PreconditionError("X is not a subset of A")
        self.A = A
        self.X = X
        self.bits = restricted_sumset(sorted(X)).bits if X else 1
        self.steps = 0

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def unused(self) -> list[int]:
        return [a for a in self.A.elements if a not in self.X]

    def add_pair(self, a1: int, a2: int):
        self.bits |= self.bits << a1
        self.bits |= self.bits << a2
        self.X.update((a1, a2))
        self.steps += 1
        if self.steps % RECHECK_EVERY == 0:
            assert restricted_sumset(sorted(self.X)).bits == self.bits

    def small_hypotheses(self) -> str:
        """'' when the small-phase hypotheses hold, else the name of the failing one."""
        half = self.n // 2
        if len(self.X) > half:
            return "size_cap"
        if self.size > comb(half, 2):
            return "sumset_cap"
        return ""

    def small_step(self) -> GrowthStep:
        bad = self.small_hypotheses()
        if bad:
            raise PreconditionError(f"small-phase hypothesis violated: {bad}")
        rest = self.unused()
        if len(rest) < 2:
            raise DegenerateError("fewer than two unused elements")
        S, before = self.bits, self.size
        pairs = {a1 + a2: (a1, a2) for a1, a2 in combinations(rest, 2)}
        assert len(pairs) == comb(len(rest), 2)  # Sidon: pair sums distinct
        best_b, best_overlap = None, None
        for b in sorted(pairs):
            ov = (S & (S << b)).bit_count()
            if best_overlap is None or ov < best_overlap:
                best_b, best_overlap = b, ov
        # averaging bound: some b overlaps in at most half of Sigma*X
        assert 2 * best_overlap <= before
        a1, a2 = pairs[best_b]
        self.add_pair(a1, a2)
        after = self.size
        assert 2 * after >= 3 * before
        return GrowthStep("small", a1, a2, best_b, len(self.X) - 2, len(self.X),
                          before, after, overlap=best_overlap)

    def large_hypotheses(self) -> str:
        q = self.n // 4
        if len(self.X) > (3 * self.n) // 4:
            return "size_cap"
        if self.size < comb(q, 2):
            return "sumset_floor"
        return ""

    def large_step(self) -> GrowthStep:
        bad = self.large_hypotheses()
        if bad:
            raise PreconditionError(f"large-phase hypothesis violated: {bad}")
        q = self.n // 4
        rest = self.unused()
        if q < 2 or len(rest) < q:
            raise DegenerateError("need at least max(2, |A|/4) unused elements")
        chosen = rest[:q]
        pairs = {a1 + a2: (a1, a2) for a1, a2 in combinations(chosen, 2)}
        nb = len(pairs)
        assert nb == comb(q, 2)
        S, before = self.bits, self.size
        assert nb <= before
        # top = the nb largest elements of Sigma*X
        cut = S.bit_length()
        top, found = 0, 0
        while found < nb:
            cut -= 1
            if (S >> cut) & 1:
                top |= 1 << cut
                found += 1
        best_b, best_new, fresh_pairs = None, -1, 0
        for b in sorted(pairs):
            new = ((top << b) & ~S).bit_count()
            fresh_pairs += new
            if new > best_new:
                best_b, best_new = b, new
        # counting bound: more than half of the |B|^2 pairs (s, b) leave Sigma*X
        assert 2 * fresh_pairs > nb * nb
        a1, a2 = pairs[best_b]
        self.add_pair(a1, a2)
        after = self.size
        assert after >= before + (nb + 1) // 2
        return GrowthStep("large", a1, a2, best_b, len(self.X) - 2, len(self.X),
                          before, after, new_values=best_new)


def grow_small_phase(A, X=()) -> tuple[frozenset, GrowthStep]:
    """One small-phase step: returns the enlarged X and the step record."""
    A = A if isinstance(A, IntSet) else IntSet.of(A)
    g = _Grower(A, X)
    step = g.small_step()
    return frozenset(g.X), step


def grow_large_phase(A, X=()) -> tuple[frozenset, GrowthStep]:
    """One large-phase step: returns the enlarged X and the step record."""
    A = A if isinstance(A, IntSet) else IntSet.of(A)
    g = _Grower(A, X)
    step = g.large_step()
    return frozenset(g.X), step


def sidon_cubic_lowerbound(A) -> GrowthTrace:
    """Run the small phase until a hypothesis fails, then the large phase
    while |X| <= 3|A|/4; return the full trace."""
    A = A if isinstance(A, IntSet) else IntSet.of(A)
    if len(A) < 8:
        raise PreconditionError("the growth pipeline needs |A| >= 8")
    g = _Grower(A)
    trace = GrowthTrace(len(A))
    while True:
        trace.small_exit = g.small_hypotheses()
        if trace.small_exit:
            break
        trace.steps.append(g.small_step())
    while not g.large_hypotheses():
        trace.steps.append(g.large_step())
    trace.final_x = tuple(sorted(g.X))
    trace.final_sumset = g.size
    assert restricted_sumset(trace.final_x).bits == g.bits
    assert is_sidon(trace.final_x)
    return trace


def final_size_floor(n: int) -> float:
    """(1/64) * floor(n/4)^2 * floor(n/8), the assembled lower bound with floors."""
    return (n // 4) ** 2 * (n // 8) / 64


def first_sumset_cap_exit(sets) -> int | None:
    """Smallest |A| among ``sets`` whose small phase stops on the sumset cap
    before the size cap, or None if none does."""
    sizes = []
    for A in sets:
        A = A if isinstance(A, IntSet) else IntSet.of(A)
        if len(A) >= 8 and sidon_cubic_lowerbound(A).small_exit == "sumset_cap":
            sizes.append(len(A))
    return min(sizes, default=None)
