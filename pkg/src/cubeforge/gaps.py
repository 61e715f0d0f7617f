"""Generalized arithmetic progressions.

A rank-r GAP is ``{a + sum k_i d_i : m_i < k_i <= M_i}``.  Ranges are stored
half-open exactly like that; nothing is normalized to closed intervals.

The rank-2 decomposition, the collision search and the containing AP all
work on the *closed* index box ``[-M_1, M_1] x [-M_2, M_2]`` of a symmetric
GAP (six parts listed with ``-m <= i <= m``), and ignore the base point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from pathlib import Path

import numpy as np

from .errors import CapError, DomainError, NotFoundError, ShapeError
from .intset import ApWitness, IntSet

DEFAULT_ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class Gap:
    base: int
    differences: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "differences", tuple(int(d) for d in self.differences))
        object.__setattr__(self, "lower", tuple(int(m) for m in self.lower))
        object.__setattr__(self, "upper", tuple(int(m) for m in self.upper))
        r = len(self.differences)
        if r < 1 or len(self.lower) != r or len(self.upper) != r:
            raise ShapeError("a GAP needs rank >= 1 and one range per difference")
        if any(d == 0 for d in self.differences):
            raise DomainError("GAP differences must be nonzero")
        if any(M - m < 1 for m, M in zip(self.lower, self.upper)):
            raise DomainError("every range (m, M] needs M - m >= 1")

    @classmethod
    def symmetric(cls, differences, extents, base: int = 0) -> Gap:
        """GAP with ranges ``(-M_i, M_i]``."""
        extents = tuple(extents)
        return cls(base, tuple(differences), tuple(-M for M in extents), extents)

    @property
    def rank(self) -> int:
        return len(self.differences)

    @property
    def volume(self) -> int:
        return prod(M - m for m, M in zip(self.lower, self.upper))

    @property
    def is_symmetric(self) -> bool:
        return all(m == -M for m, M in zip(self.lower, self.upper))

    def is_proper(self, cap: int | None = None) -> bool:
        return len(enumerate_gap(self, cap=cap)) == self.volume

    def closed_box(self) -> Gap:
        """The GAP over the closed index box ``[-M_i, M_i]`` (symmetric GAPs only)."""
        if not self.is_symmetric:
            raise ShapeError("closed_box needs a symmetric GAP")
        return Gap(self.base, self.differences, tuple(-M - 1 for M in self.upper), self.upper)

    def to_text(self) -> str:
        ds = ",".join(map(str, self.differences))
        rs = ", ".join(f"{m}..{M}" for m, M in zip(self.lower, self.upper))
        return f"{self.base}; {ds}; {rs}"

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "differences": list(self.differences),
            "lower": list(self.lower),
            "upper": list(self.upper),
            "volume": self.volume,
            "symmetric": self.is_symmetric,
        }


_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_gap(text: str) -> Gap:
    """Parse ``a; d1,d2,...; m1..M1, m2..M2, ...``.

    ``m..M`` denotes the half-open range ``(m, M]``.
    """
    lines = [ln for ln in (l.split("#", 1)[0].strip() for l in text.splitlines()) if ln]
    if len(lines) != 1:
        raise DomainError("a GAP descriptor is exactly one non-comment line")
    fields = lines[0].split(";")
    if len(fields) != 3:
        raise DomainError("GAP descriptor needs three ';'-separated fields")
    try:
        base = int(fields[0])
        diffs = tuple(int(t) for t in fields[1].split(",") if t.strip())
    except ValueError as exc:
        raise DomainError(f"bad GAP descriptor: {exc}") from None
    lower, upper = [], []
    for chunk in fields[2].split(","):
        mt = _RANGE.match(chunk)
        if not mt:
            raise DomainError(f"bad range {chunk!r}; expected m..M")
        lower.append(int(mt.group(1)))
        upper.append(int(mt.group(2)))
    return Gap(base, diffs, tuple(lower), tuple(upper))


def read_gap_file(path) -> Gap:
    return parse_gap(Path(path).read_text())


def _index_axes(lower, upper):
    return [np.arange(m + 1, M + 1, dtype=np.int64) for m, M in zip(lower, upper)]


def enumerate_gap(Q: Gap, *, cap: int | None = None) -> IntSet:
    """The set of values the GAP realizes."""
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if Q.volume > cap:
        raise CapError(f"GAP volume {Q.volume} exceeds the enumeration cap {cap}")
    vals = np.array([Q.base], dtype=np.int64)
    for axis, d in zip(_index_axes(Q.lower, Q.upper), Q.differences):
        vals = np.add.outer(vals, axis * d).ravel()
    return IntSet(tuple(int(v) for v in np.unique(vals)))


@dataclass(frozen=True)
class Rank2Decomposition:
    """The six parts of a symmetric rank-2 GAP over its closed index box.

    ``parts[j]`` is Q_{j+1}; ``preimages[j]`` lists its index pairs (i, j).
    """

    parts: tuple[IntSet, ...]
    preimages: tuple[tuple[tuple[int, int], ...], ...]

    def union(self) -> IntSet:
        out: set[int] = set()
        for p in self.parts:
            out.update(p.elements)
        return IntSet.of(out)


def _check_rank2(Q: Gap, cap: int | None, proper: bool = True):
    if Q.rank != 2:
        raise ShapeError("rank-2 GAP required")
    if not Q.is_symmetric:
        raise ShapeError("symmetric GAP required (m_i = -M_i)")
    if any(M < 1 for M in Q.upper):
        raise ShapeError("each axis extent must be >= 1")
    if proper and not Q.closed_box().is_proper(cap=cap):
        raise ShapeError("GAP is not proper on its closed index box")


def decompose_rank2(Q: Gap, *, cap: int | None = None) -> Rank2Decomposition:
    """Split the closed symmetric box into sign quadrants and the two axes.

    Q5 is the d1-axis including 0 and Q6 the d2-axis without 0.  Parts are
    computed for base 0 and then translated by the base.
    """
    _check_rank2(Q, cap)
    d1, d2 = Q.differences
    m, n = Q.upper
    pos_i, neg_i = range(1, m + 1), range(-m, 0)
    pos_j, neg_j = range(1, n + 1), range(-n, 0)
    grids = [
        list(product(pos_i, pos_j)),
        list(product(pos_i, neg_j)),
        list(product(neg_i, pos_j)),
        list(product(neg_i, neg_j)),
        [(i, 0) for i in range(-m, m + 1)],
        [(0, j) for j in range(-n, n + 1) if j != 0],
    ]
    a = Q.base
    parts = tuple(IntSet.of(a + i * d1 + j * d2 for i, j in g) for g in grids)
    return Rank2Decomposition(parts, tuple(tuple(g) for g in grids))


@dataclass(frozen=True)
class CollisionWitness:
    x: tuple[int, int]
    y: tuple[int, int]
    d: tuple[int, int]

    def value(self) -> int:
        return self.x[0] * self.d[0] + self.x[1] * self.d[1]

    def to_dict(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "d": list(self.d), "value": self.value()}


def find_collision(d1: int, d2: int, m: int, n: int, k: int = 1) -> CollisionWitness:
    """Smallest pair ``(x1, x2) != (y1, y2)`` with equal ``x1*d1 + x2*d2``.

    Coordinates range over ``1 <= x1, y1 <= k*m`` and ``1 <= x2, y2 <= k*n``;
    the witness is lexicographically smallest in ``(x1, x2, y1, y2)``, so
    ``x`` is the first grid point with a partner and ``y`` its first partner.
    Raises ``NotFoundError`` when the box admits no collision.
    """
    if d1 == 0 or d2 == 0:
        raise DomainError("differences must be nonzero")
    X, Y = k * m, k * n
    if X < 1 or Y < 1:
        raise DomainError("search bounds k*m and k*n must be >= 1")
    by_value: dict[int, list[tuple[int, int]]] = {}
    for a in range(1, X + 1):
        for b in range(1, Y + 1):
            by_value.setdefault(a * d1 + b * d2, []).append((a, b))
    best = None
    for pts in by_value.values():
        # pts is already in lexicographic order
        if len(pts) >= 2 and (best is None or pts[0] < best[0]):
            best = (pts[0], pts[1])
    if best is None:
        raise NotFoundError(f"no collision for d=({d1},{d2}) in [1,{X}]x[1,{Y}]")
    w = CollisionWitness(best[0], best[1], (d1, d2))
    assert w.x[0] * d1 + w.x[1] * d2 == w.y[0] * d1 + w.y[1] * d2
    return w


def containing_ap(Q: Gap, *, cap: int | None = None) -> ApWitness:
    """The AP with difference gcd(d1, d2) from -(m|d1| + n|d2|) to m|d1| + n|d2|,
    translated by the base.

    Properness is not required: containment holds for any symmetric rank-2
    GAP, proper or not.
    """
    _check_rank2(Q, cap, proper=False)
    d1, d2 = Q.differences
    m, n = Q.upper
    g = gcd(d1, d2)
    reach = m * abs(d1) + n * abs(d2)
    return ApWitness(Q.base - reach, g, 1 + 2 * reach // g)
