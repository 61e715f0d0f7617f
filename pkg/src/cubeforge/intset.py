"""Finite integer sets with a dual sorted-tuple / bitset representation.

The bitset is a Python ``int`` whose bit ``i`` marks the integer ``lo + i``.
Python integers are arbitrary precision, so shifting and OR-ing them is a
compact subset-sum kernel without any explicit word management.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DomainError, SumOverflowError

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)


def check_int64(value: int, what: str = "value") -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise SumOverflowError(f"{what} {value} does not fit in a signed 64-bit integer")
    return value


def bits_to_offsets(bits: int) -> np.ndarray:
    """Positions of the set bits of a non-negative int, ascending."""
    if bits == 0:
        return np.empty(0, dtype=np.int64)
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


def offsets_to_bits(offsets: Iterable[int]) -> int:
    offsets = np.asarray(list(offsets) if not isinstance(offsets, np.ndarray) else offsets, dtype=np.int64)
    if offsets.size == 0:
        return 0
    mask = np.zeros(int(offsets.max()) + 1, dtype=np.uint8)
    mask[offsets] = 1
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class IntSet:
    """Immutable finite set of 64-bit integers.

    ``elements`` is strictly increasing; ``(lo, hi)`` is an inclusive window
    containing every element.  Equality and hashing look at the elements
    only, so the same set with two different windows compares equal.
    """

    elements: tuple[int, ...]
    lo: int = field(default=0, compare=False)
    hi: int = field(default=-1, compare=False)

    def __post_init__(self):
        els = self.elements
        for a, b in zip(els, els[1:]):
            if not a < b:
                raise DomainError("IntSet elements must be strictly increasing")
        if els:
            check_int64(els[0], "element")
            check_int64(els[-1], "element")
            if self.hi < self.lo:
                # default window: tight
                object.__setattr__(self, "lo", els[0])
                object.__setattr__(self, "hi", els[-1])
            elif not (self.lo <= els[0] and els[-1] <= self.hi):
                raise DomainError(f"window [{self.lo}, {self.hi}] does not cover the elements")

    @classmethod
    def of(cls, values: Iterable[int]) -> IntSet:
        return cls(tuple(sorted({int(v) for v in values})))

    @classmethod
    def from_bits(cls, bits: int, lo: int) -> IntSet:
        offs = bits_to_offsets(bits)
        if offs.size == 0:
            return cls(())
        hi = lo + bits.bit_length() - 1
        s = cls(tuple(int(lo + o) for o in offs), lo, hi)
        s.__dict__["bits"] = bits
        return s

    @cached_property
    def bits(self) -> int:
        """Bitset view relative to ``lo``."""
        return offsets_to_bits([e - self.lo for e in self.elements])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        if not self.elements or not self.lo <= x <= self.hi:
            return False
        return bool((self.bits >> (x - self.lo)) & 1)

    def __repr__(self) -> str:
        if len(self.elements) <= 12:
            return f"IntSet({list(self.elements)})"
        head = ", ".join(map(str, self.elements[:5]))
        return f"IntSet([{head}, ... ({len(self)} elements) ..., {self.elements[-1]}])"

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    def to_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def translate(self, t: int) -> IntSet:
        if not self.elements:
            return self
        check_int64(self.elements[0] + t)
        check_int64(self.elements[-1] + t)
        return IntSet(tuple(e + t for e in self.elements), self.lo + t, self.hi + t)

    def union(self, other: IntSet) -> IntSet:
        return IntSet.of(self.elements + other.elements)

    def issubset(self, other: IntSet) -> bool:
        return all(x in other for x in self.elements)


@dataclass(frozen=True)
class ApWitness:
    """The progression ``start, start+difference, ..., start+(length-1)*difference``."""

    start: int
    difference: int
    length: int

    def __post_init__(self):
        if self.difference <= 0 or self.length < 1:
            raise DomainError("ApWitness needs difference > 0 and length >= 1")

    def terms(self) -> list[int]:
        return [self.start + j * self.difference for j in range(self.length)]

    def to_dict(self) -> dict:
        return {"start": self.start, "difference": self.difference, "length": self.length}


_COMMENT = re.compile(r"#.*$")


def parse_set_text(text: str) -> IntSet:
    """Parse integers separated by whitespace and/or commas; ``#`` comments."""
    tokens: list[int] = []
    for line in text.splitlines():
        line = _COMMENT.sub("", line)
        for tok in re.split(r"[\s,]+", line.strip()):
            if tok:
                try:
                    tokens.append(int(tok))
                except ValueError:
                    raise DomainError(f"not an integer: {tok!r}") from None
    return IntSet.of(tokens)


def read_set_file(path) -> IntSet:
    return parse_set_text(Path(path).read_text())


def format_set_text(s: IntSet) -> str:
    return " ".join(map(str, s.elements)) + "\n"
