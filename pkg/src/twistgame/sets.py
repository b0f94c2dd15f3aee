"""Bitmask-backed subsets of a group's element range."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True, order=True)
class ElemSet:
    """A subset of the elements ``{0, ..., n-1}``, stored as an int bitmask.

    Instances are immutable and hashable, so they can key caches and sit in
    sets.  Ordering is lexicographic on ``(bits, n)`` which gives the
    deterministic tie-breaks used throughout the package.
    """

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("carrier size must be nonnegative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits 0x{self.bits:x} out of range for carrier of size {self.n}")

    @classmethod
    def empty(cls, n: int) -> "ElemSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "ElemSet":
        return cls((1 << n) - 1, n)

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "ElemSet":
        bits = 0
        for m in members:
            m = int(m)
            if not 0 <= m < n:
                raise ValueError(f"element {m} out of range [0, {n})")
            bits |= 1 << m
        return cls(bits, n)

    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def member_array(self) -> np.ndarray:
        return np.array(self.members(), dtype=np.int64)

    def mask_array(self) -> np.ndarray:
        """Boolean membership vector of length n."""
        out = np.zeros(self.n, dtype=bool)
        for i in self.members():
            out[i] = True
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __contains__(self, elem: int) -> bool:
        return 0 <= elem < self.n and bool((self.bits >> elem) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "ElemSet") -> None:
        if self.n != other.n:
            raise ValueError("sets live on different carriers")

    def __or__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.bits | other.bits, self.n)

    def __and__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "ElemSet") -> "ElemSet":
        self._check(other)
        return ElemSet(self.bits & ~other.bits, self.n)

    def add(self, elem: int) -> "ElemSet":
        if not 0 <= elem < self.n:
            raise ValueError(f"element {elem} out of range [0, {self.n})")
        return ElemSet(self.bits | (1 << elem), self.n)

    def complement(self) -> "ElemSet":
        return ElemSet(~self.bits & ((1 << self.n) - 1), self.n)

    def issubset(self, other: "ElemSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __repr__(self) -> str:
        return f"ElemSet({{{', '.join(map(str, self.members()))}}}, n={self.n})"
