"""Restricted sumsets of subsets of integer boxes in dimension 1 to 4.

Besides the d-dimensional DP this module carries the constructive pieces of
the dense-box lower bound: stacks over the first d-1 coordinates, the
dyadic size classes, the index walk inside one stack and the box flattening
map into two dimensions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from pathlib import Path

import numpy as np

from .errors import CapError, DomainError, EmptyError, RangeError, ShapeError
from .intset import IntSet
from .sumsets import DEFAULT_WINDOW_CAP, m_fold_restricted_sumset

MAX_DIM = 4


@dataclass(frozen=True)
class GridSet:
    dim: int
    points: frozenset
    box: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ShapeError(f"dimension must be in 1..{MAX_DIM}")
        pts = frozenset(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(len(p) != self.dim for p in pts):
            raise ShapeError("every point needs exactly dim coordinates")
        if self.box is not None:
            box = tuple(int(N) for N in self.box)
            object.__setattr__(self, "box", box)
            if len(box) != self.dim or any(N < 1 for N in box):
                raise ShapeError("box needs dim positive side lengths")
            for p in pts:
                if any(not 1 <= c <= N for c, N in zip(p, box)):
                    raise RangeError(f"point {p} lies outside the box {box}")

    @classmethod
    def of(cls, points, box=None) -> GridSet:
        points = [tuple(p) for p in points]
        if box is not None:
            dim = len(box)
        elif points:
            dim = len(points[0])
        else:
            raise ShapeError("cannot infer the dimension of an empty point set")
        return cls(dim, frozenset(points), tuple(box) if box is not None else None)

    @classmethod
    def full_box(cls, box) -> GridSet:
        box = tuple(box)
        pts = np.indices(box).reshape(len(box), -1).T + 1
        return cls(len(box), frozenset(map(tuple, pts.tolist())), box)

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[tuple[int, ...]]:
        return sorted(self.points)

    @property
    def density(self) -> Fraction:
        if self.box is None:
            raise ShapeError("density needs a declared box")
        return Fraction(len(self.points), prod(self.box))


def parse_grid_text(text: str) -> GridSet:
    """One point per line, comma-separated; optional ``box: N1,N2,...`` header."""
    box = None
    points = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("box:"):
            if box is not None or points:
                raise DomainError("the box header must come first")
            box = tuple(int(t) for t in line[4:].split(",") if t.strip())
            continue
        try:
            points.append(tuple(int(t) for t in line.split(",")))
        except ValueError:
            raise DomainError(f"bad grid point line {raw!r}") from None
    if box is None and not points:
        raise DomainError("empty grid file without a box header")
    return GridSet.of(points, box)


def read_grid_file(path) -> GridSet:
    return parse_grid_text(Path(path).read_text())


def format_grid_text(A: GridSet) -> str:
    lines = []
    if A.box is not None:
        lines.append("box: " + ",".join(map(str, A.box)))
    lines += [",".join(map(str, p)) for p in A.sorted_points()]
    return "\n".join(lines) + "\n"


def _shifted_or(arr: np.ndarray, src: np.ndarray, shift: tuple[int, ...]):
    """arr |= src translated by ``shift`` (entries falling off are dropped)."""
    dst_sl, src_sl = [], []
    for s, size in zip(shift, arr.shape):
        if s >= 0:
            dst_sl.append(slice(s, size))
            src_sl.append(slice(0, size - s))
        else:
            dst_sl.append(slice(0, size + s))
            src_sl.append(slice(-s, size))
    arr[tuple(dst_sl)] |= src[tuple(src_sl)]


def grid_restricted_sumset(A: GridSet, m: int = 1, *, window_cap: int | None = None) -> GridSet:
    """All coordinatewise sums of elements of ``A``, each used at most ``m`` times.

    This equals ``m`` copies of the restricted sumset added together.
    """
    if m < 1:
        raise RangeError("m must be >= 1")
    cap = DEFAULT_WINDOW_CAP if window_cap is None else window_cap
    pts = A.sorted_points()
    lo = [m * sum(min(p[i], 0) for p in pts) for i in range(A.dim)]
    hi = [m * sum(max(p[i], 0) for p in pts) for i in range(A.dim)]
    shape = tuple(h - l + 1 for l, h in zip(lo, hi))
    if prod(shape) > cap:
        raise CapError(f"grid DP window {shape} exceeds the cap of {cap} cells")
    reach = np.zeros(shape, dtype=bool)
    reach[tuple(-l for l in lo)] = True
    for p in pts:
        layer = reach.copy()
        for _ in range(m):
            nxt = np.zeros_like(reach)
            _shifted_or(nxt, layer, p)
            reach |= nxt
            layer = nxt
    idx = np.argwhere(reach) + np.asarray(lo)
    return GridSet(A.dim, frozenset(map(tuple, idx.tolist())))


def grid_sumset_size(A: GridSet, m: int = 1, *, window_cap: int | None = None) -> int:
    return len(grid_restricted_sumset(A, m, window_cap=window_cap))


@dataclass(frozen=True)
class StackDecomposition:
    """Stacks ``A_x`` keyed by the first d-1 coordinates.

    ``stacks[x]`` is the sorted tuple of last coordinates in stack ``x``.  A
    stack is dense iff its size exceeds ``alpha * N_d / 2``.
    """

    box: tuple[int, ...]
    size: int
    alpha: Fraction
    stacks: dict = field(compare=False)
    dense: frozenset
    s: int

    @property
    def threshold(self) -> Fraction:
        return self.alpha * self.box[-1] / 2

    def dense_mass(self) -> int:
        return sum(len(self.stacks[x]) for x in self.dense)


def _ceil_log2_inverse(alpha: Fraction) -> int:
    """ceil(log2(1/alpha)) for 0 < alpha <= 1, exactly."""
    inv = 1 / alpha
    s = 0
    while (1 << s) < inv:
        s += 1
    return s


def stack_partition(A: GridSet) -> StackDecomposition:
    if A.dim < 2:
        raise ShapeError("stacks need dimension >= 2")
    if A.box is None:
        raise ShapeError("stack_partition needs a declared box")
    stacks: dict[tuple, list[int]] = {}
    for p in A.sorted_points():
        stacks.setdefault(p[:-1], []).append(p[-1])
    stacks = {x: tuple(v) for x, v in stacks.items()}
    if not A.points:
        return StackDecomposition(A.box, 0, Fraction(0), {}, frozenset(), 1)
    alpha = A.density
    thr = alpha * A.box[-1] / 2
    dense = frozenset(x for x, v in stacks.items() if len(v) > thr)
    s = max(1, _ceil_log2_inverse(alpha))
    dec = StackDecomposition(A.box, len(A), alpha, stacks, dense, s)
    # sparse stacks hold at most thr * (number of bases) = |A|/2 elements
    assert 2 * dec.dense_mass() >= len(A)
    return dec


@dataclass(frozen=True)
class DyadicChoice:
    index: int
    threshold: Fraction
    bases: tuple
    covered: int
    classes: tuple  # (i, t, covered mass) for every class, selected or not
    s: int
    size: int

    @property
    def meets_2s_bound(self) -> bool:
        """Whether the chosen class covers at least |A| / (2s) elements."""
        return 2 * self.s * self.covered >= self.size



def dyadic_classes(S: StackDecomposition) -> list[tuple[int, Fraction, tuple]]:
    """Dense stacks grouped by size into ``(t, 2t]`` with ``t = 2^(i-1) alpha N_d``.

    Classes run from ``i = 0`` up to the first class whose upper end reaches
    the largest dense stack, so every dense stack lands in exactly one class.
    """
    if not S.dense:
        return []
    aN = S.alpha * S.box[-1]
    biggest = max(len(S.stacks[x]) for x in S.dense)
    out = []
    i = 0
    while True:
        t = aN * Fraction(2) ** (i - 1)
        members = tuple(sorted(x for x in S.dense if t < len(S.stacks[x]) <= 2 * t))
        out.append((i, t, members))
        if 2 * t >= biggest:
            return out
        i += 1


def dyadic_select(S: StackDecomposition) -> DyadicChoice:
    """The dyadic class covering the most elements (ties to the smallest i)."""
    classes = dyadic_classes(S)
    if not classes:
        raise EmptyError("no dense stack")
    table = tuple((i, t, sum(len(S.stacks[x]) for x in xs)) for i, t, xs in classes)
    best = max(range(len(classes)), key=lambda j: (table[j][2], -j))
    i, t, bases = classes[best]
    choice = DyadicChoice(i, t, bases, table[best][2], table, S.s, S.size)
    # pigeonhole: dense mass is split over len(classes) classes
    assert len(classes) * choice.covered >= S.dense_mass()
    assert 2 * len(classes) * choice.covered >= S.size
    return choice


def index_walk_witness(B, m: int = 1) -> list[int]:
    """Increasing walk of sums of ``B`` with total multiplicity ``m*k``.

    ``B`` has ``2k`` positive elements ``b_1 < ... < b_2k``.  Starting from
    ``m*(b_1 + ... + b_k)``, repeatedly take the largest ``i < 2k`` with
    ``b_i`` used and ``b_{i+1}`` used fewer than ``m`` times, and move one
    unit from ``b_i`` to ``b_{i+1}``.  Each move raises the index sum by one,
    so the walk has ``m*k^2 + 1`` entries.
    """
    b = sorted(B)
    if len(b) % 2 or not b:
        raise ShapeError("index walk needs a nonempty set of even size")
    if b[0] <= 0:
        raise DomainError("index walk needs positive elements")
    if m < 1:
        raise RangeError("m must be >= 1")
    k = len(b) // 2
    mult = [m] * k + [0] * k
    total = m * sum(b[:k])
    walk = [total]
    while True:
        for i in range(2 * k - 2, -1, -1):
            if mult[i] > 0 and mult[i + 1] < m:
                break
        else:
            break
        mult[i] -= 1
        mult[i + 1] += 1
        total += b[i + 1] - b[i]
        walk.append(total)
    assert mult == [0] * k + [m] * k
    assert len(walk) == m * k * k + 1
    return walk


def _kept_axes(dims) -> list[int]:
    return [i for i, N in enumerate(dims) if N != 1]


def freiman_embed_box(x, dims) -> tuple[int, int]:
    """Flatten a point of ``[N_1] x ... x [N_d]`` into two coordinates.

    Axes with ``N_i = 1`` are dropped first.  The image is
    ``(x_1, sum_{i>=2} x_i * N_2 * ... * N_{i-1})``, which is injective on the
    box and additive, so it maps the restricted sumset of ``A`` onto that of
    the image.  Distinct sums may merge, so ``|S*phi(A)| <= |S*A|`` only.
    """
    x, dims = tuple(x), tuple(dims)
    if len(x) != len(dims):
        raise ShapeError("point and box dimensions differ")
    if any(not 1 <= c <= N for c, N in zip(x, dims)):
        raise RangeError(f"{x} lies outside the box {dims}")
    keep = _kept_axes(dims)
    if not keep:
        return (1, 0)
    xs = [x[i] for i in keep]
    Ns = [dims[i] for i in keep]
    second, radix = 0, 1
    for i in range(1, len(xs)):
        second += xs[i] * radix
        radix *= Ns[i]
    return (xs[0], second)


def freiman_embed_set(A: GridSet) -> GridSet:
    if A.box is None:
        raise ShapeError("embedding needs a declared box")
    pts = [freiman_embed_box(p, A.box) for p in A.points]
    return GridSet(2, frozenset(pts))


def embedding_height(dims) -> int:
    """M = sum_{i>=2} N_2 * ... * N_i over the kept axes."""
    Ns = [dims[i] for i in _kept_axes(dims)]
    return sum(prod(Ns[1 : i + 1]) for i in range(1, len(Ns)))


@dataclass(frozen=True)
class DenseBoxReport:
    dim: int
    size: int
    m: int
    alpha: float
    sumset_size: int
    log_inv_alpha: float
    log_size: float
    constant_alpha: float
    constant_size: float
    chain_bound: int | None = None

    @property
    def chain_ratio(self) -> float | None:
        return None if self.chain_bound is None else self.sumset_size / self.chain_bound

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["chain_ratio"] = self.chain_ratio
        return out


def verify_dense_gap_bound(A: GridSet, m: int = 1, *, window_cap: int | None = None) -> DenseBoxReport:
    """Measure ``|m Sigma* A| * L^(d^2) / (|A|^(d+1) m^d)``.

    Two normalizations are reported: ``L = log2(1/alpha)`` and
    ``L = log2 |A|``; each log is clamped below at 1 so that full-density or
    tiny inputs do not divide by zero.  In dimension 1 the exact chain bound
    is also reported and, for positive sets with at
    least two elements, ``|m Sigma* A| >= |A|^2 m / 2`` is asserted.
    Here the chain bound is ``m*C(|A|+1, 2) + 1``: the chain gives
    ``L = C(|A|+1, 2) + 1`` distinct subset sums and ``|mX| >= m(L - 1) + 1``.
    """
    if not A.points:
        raise EmptyError("verify_dense_gap_bound needs a nonempty set")
    if A.box is None:
        raise ShapeError("verify_dense_gap_bound needs a declared box")
    d, n = A.dim, len(A)
    size = grid_sumset_size(A, m, window_cap=window_cap)
    alpha = A.density
    la = max(1.0, math.log2(1 / alpha)) if alpha < 1 else 1.0
    ls = max(1.0, math.log2(n))
    denom = n ** (d + 1) * m**d
    chain = None
    if d == 1:
        chain = m * comb(n + 1, 2) + 1
        if n >= 2:
            assert size >= chain and 2 * size >= n * n * m
    return DenseBoxReport(
        dim=d,
        size=n,
        m=m,
        alpha=float(alpha),
        sumset_size=size,
        log_inv_alpha=la,
        log_size=ls,
        constant_alpha=size * la ** (d * d) / denom,
        constant_size=size * ls ** (d * d) / denom,
        chain_bound=chain,
    )


def as_intset(A: GridSet) -> IntSet:
    if A.dim != 1:
        raise ShapeError("only 1-dimensional grid sets convert to IntSet")
    return IntSet.of(p[0] for p in A.points)


def one_dim_mfold(A: GridSet, m: int) -> IntSet:
    """The 1-D route through the bitset kernel, for cross-checking."""
    return m_fold_restricted_sumset(as_intset(A), m)
