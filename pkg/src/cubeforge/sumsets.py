"""One-dimensional sumset kernels.

All dynamic programs run on Python-int bitsets.  Negative elements are
handled by offsetting the window by the sum of the negative elements, so the
bit for the empty sum sits at ``-lo``.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .errors import RangeError, DomainError, WindowError
from .intset import ApWitness, IntSet, bits_to_offsets, check_int64, offsets_to_bits

DEFAULT_WINDOW_CAP = 1 << 30


def _as_intset(a) -> IntSet:
    return a if isinstance(a, IntSet) else IntSet.of(a)


def _sum_window(values, mult: int = 1) -> tuple[int, int]:
    """Inclusive window [lo, hi] holding every subset sum (with multiplicity
    up to ``mult``), overflow-checked."""
    neg = sum(v for v in values if v < 0) * mult
    pos = sum(v for v in values if v > 0) * mult
    check_int64(neg, "sum")
    check_int64(pos, "sum")
    check_int64(pos - neg, "sum range")
    return neg, pos


def _check_cap(cells: int, cap: int | None):
    cap = DEFAULT_WINDOW_CAP if cap is None else cap
    if cells > cap:
        raise WindowError(f"DP window of {cells} cells exceeds the cap of {cap}")


def restricted_sumset(A, *, window_cap: int | None = None) -> IntSet:
    """All subset sums of ``A``, the empty sum included.

    Elements are inserted in increasing absolute value; the result does not
    depend on the order.

    >>> list(restricted_sumset([1, 2, 4]))
    [0, 1, 2, 3, 4, 5, 6, 7]
    """
    A = _as_intset(A)
    lo, hi = _sum_window(A.elements)
    _check_cap(hi - lo + 1, window_cap)
    bits = 1 << (-lo)
    for a in sorted(A.elements, key=abs):
        bits |= (bits << a) if a >= 0 else (bits >> -a)
    return IntSet.from_bits(bits, lo)


def ell_fold_sums(A, ell: int, *, window_cap: int | None = None) -> IntSet:
    """Sums of exactly ``ell`` distinct elements of ``A`` (layered DP)."""
    A = _as_intset(A)
    if not 0 <= ell <= len(A):
        raise RangeError(f"ell={ell} outside [0, {len(A)}]")
    return ell_fold_layers(A, window_cap=window_cap)[ell]


def ell_fold_layers(A, *, window_cap: int | None = None) -> list[IntSet]:
    """``[0*A, 1*A, ..., |A|*A]``; layer j holds sums of exactly j elements."""
    A = _as_intset(A)
    lo, hi = _sum_window(A.elements)
    _check_cap((hi - lo + 1) * (len(A) + 1), window_cap)
    layers = [0] * (len(A) + 1)
    layers[0] = 1 << (-lo)
    for i, a in enumerate(sorted(A.elements, key=abs)):
        for j in range(i + 1, 0, -1):
            prev = layers[j - 1]
            layers[j] |= (prev << a) if a >= 0 else (prev >> -a)
    return [IntSet.from_bits(b, lo) for b in layers]


def _bits_sumset(x: int, y: int) -> int:
    """Bitset of {i + j : bit i of x, bit j of y}."""
    if x == 0 or y == 0:
        return 0
    if x.bit_count() > y.bit_count():
        x, y = y, x
    if x.bit_count() <= 64:
        out = 0
        for off in bits_to_offsets(x):
            out |= y << int(off)
        return out
    xa = np.zeros(x.bit_length(), dtype=np.float64)
    xa[bits_to_offsets(x)] = 1.0
    ya = np.zeros(y.bit_length(), dtype=np.float64)
    ya[bits_to_offsets(y)] = 1.0
    size = xa.size + ya.size - 1
    nfft = 1 << (size - 1).bit_length()
    conv = np.fft.irfft(np.fft.rfft(xa, nfft) * np.fft.rfft(ya, nfft), nfft)[:size]
    return offsets_to_bits(np.flatnonzero(conv > 0.5))


def sumset(S, T) -> IntSet:
    """Ordinary sumset S + T."""
    S, T = _as_intset(S), _as_intset(T)
    if not S.elements or not T.elements:
        return IntSet(())
    check_int64(S.max + T.max, "sum")
    check_int64(S.min + T.min, "sum")
    bits = _bits_sumset(S.translate(-S.min).bits, T.translate(-T.min).bits)
    return IntSet.from_bits(bits, S.min + T.min)


def m_fold_sumset(S, m: int) -> IntSet:
    """``S + S + ... + S`` with ``m`` summands (binary powering)."""
    S = _as_intset(S)
    if m < 1:
        raise RangeError("m must be >= 1")
    if not S.elements:
        return S
    check_int64(m * S.max, "sum")
    check_int64(m * S.min, "sum")
    shift = m * S.min
    base = S.translate(-S.min).bits
    acc = None
    while m:
        if m & 1:
            acc = base if acc is None else _bits_sumset(acc, base)
        m >>= 1
        if m:
            base = _bits_sumset(base, base)
    return IntSet.from_bits(acc, shift)


def m_fold_restricted_sumset(A, m: int, *, window_cap: int | None = None) -> IntSet:
    """``m`` copies of the restricted sumset added together."""
    return m_fold_sumset(restricted_sumset(A, window_cap=window_cap), m)


def chain_witness(A) -> list[int]:
    """Explicit increasing chain of C(|A|+1, 2) + 1 subset sums.

    With ``a_1 < ... < a_k`` the rows are ``0``; ``a_1..a_k``;
    ``a_i + a_k`` for ``i < k``; ``a_i + a_{k-1} + a_k`` for ``i < k-1``; and
    so on until the full sum.
    """
    A = _as_intset(A)
    if not A.elements:
        raise DomainError("chain_witness needs a nonempty set")
    if A.min <= 0:
        raise DomainError("chain_witness needs positive elements")
    a = A.elements
    k = len(a)
    chain = [0]
    tail = 0  # sum of the top elements a_{k-j+1..k}
    for j in range(k):
        # row j: a_i + tail for i over the k - j smallest elements
        chain.extend(a[i] + tail for i in range(k - j))
        tail += a[k - 1 - j]
    return chain


def longest_ap_in(S) -> ApWitness:
    """A longest arithmetic progression inside ``S``.

    Ties go to the smallest difference, then the smallest start.  For each
    difference ``d`` the bitset ``starts`` marks the starting points of runs
    of length ``t``; differences whose best possible length cannot beat the
    current record are skipped.
    """
    S = _as_intset(S)
    if not S.elements:
        raise DomainError("longest_ap_in needs a nonempty set")
    if len(S) == 1:
        return ApWitness(S.min, 1, 1)
    bits = S.bits
    span = S.max - S.min
    best = ApWitness(S.min, 1, 1)
    d = 1
    while d <= span and span // d + 1 > best.length:
        starts = bits & (bits >> d)
        t = 2
        if starts:
            while True:
                nxt = starts & (bits >> (t * d))
                if not nxt:
                    break
                starts = nxt
                t += 1
            if t > best.length:
                low = (starts & -starts).bit_length() - 1
                best = ApWitness(S.lo + low, d, t)
        d += 1
    return best


def is_sidon(A) -> bool:
    """True iff all sums ``a + b`` with ``a <= b`` in ``A`` are distinct."""
    A = _as_intset(A)
    seen = set()
    els = A.elements
    for i, a in enumerate(els):
        for b in els[i:]:
            s = a + b
            if s in seen:
                return False
            seen.add(s)
    return True


def chain_lower_bound(k: int) -> int:
    """C(k+1, 2) + 1, the minimum size of the restricted sumset of k positive integers."""
    return comb(k + 1, 2) + 1
