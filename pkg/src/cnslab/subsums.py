"""Sumsets and bounded subset-sum sets over F_p.

Sets are p-bit membership vectors stored in a Python ``int`` (bit r set
iff residue r is a member).  Adding a constant is a cyclic rotation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BadBounds, BadH, ContextMismatch


def rotate(bits: int, shift: int, p: int, mask: int | None = None) -> int:
    """Translate the set encoded by ``bits`` by ``shift`` in Z/pZ."""
    shift %= p
    if shift == 0:
        return bits
    if mask is None:
        mask = (1 << p) - 1
    return ((bits << shift) & mask) | (bits >> (p - shift))


@dataclass(frozen=True)
class FpSet:
    p: int
    bits: int = 0

    @classmethod
    def of(cls, p: int, values: Iterable[int] = ()) -> "FpSet":
        bits = 0
        for v in values:
            bits |= 1 << (v % p)
        return cls(p, bits)

    @classmethod
    def interval(cls, p: int, lo: int, hi: int) -> "FpSet":
        """Residues of the integer interval [lo, hi] (empty if hi < lo)."""
        return cls.of(p, range(lo, hi + 1))

    @classmethod
    def full(cls, p: int) -> "FpSet":
        return cls(p, (1 << p) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> (x % self.p) & 1)

    def __iter__(self) -> Iterator[int]:
        bits, r = self.bits, 0
        while bits:
            low = bits & -bits
            r = low.bit_length() - 1
            yield r
            bits ^= low

    def elements(self) -> list[int]:
        return list(self)

    def _check(self, other: "FpSet") -> None:
        if self.p != other.p:
            raise ContextMismatch(f"sets live in F_{self.p} and F_{other.p}")

    def __or__(self, other: "FpSet") -> "FpSet":
        self._check(other)
        return FpSet(self.p, self.bits | other.bits)

    def __and__(self, other: "FpSet") -> "FpSet":
        self._check(other)
        return FpSet(self.p, self.bits & other.bits)

    def __sub__(self, other: "FpSet") -> "FpSet":
        self._check(other)
        return FpSet(self.p, self.bits & ~other.bits)

    def issubset(self, other: "FpSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def translate(self, t: int) -> "FpSet":
        return FpSet(self.p, rotate(self.bits, t, self.p))

    def negate(self) -> "FpSet":
        return FpSet.of(self.p, (-x for x in self))

    def dilate(self, lam: int) -> "FpSet":
        return FpSet.of(self.p, (lam * x for x in self))

    def reflect(self, s: int) -> "FpSet":
        """The set {s - x}."""
        return FpSet.of(self.p, (s - x for x in self))

    def total(self) -> int:
        return sum(self) % self.p

    def __repr__(self) -> str:
        return f"FpSet(p={self.p}, {self.elements()})"


@dataclass(frozen=True)
class SubsumTable:
    """Row k holds k^A, the sums of k pairwise distinct elements of the source."""

    source: FpSet
    rows: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.source.p

    def row(self, k: int) -> FpSet:
        return FpSet(self.p, self.rows[k])

    def union(self, lo: int, hi: int) -> FpSet:
        bits = 0
        for k in range(max(lo, 0), min(hi, len(self.rows) - 1) + 1):
            bits |= self.rows[k]
        return FpSet(self.p, bits)


def sumset(A: FpSet, B: FpSet) -> FpSet:
    A._check(B)
    p, mask, out = A.p, (1 << A.p) - 1, 0
    for a in A:
        out |= rotate(B.bits, a, p, mask)
    return FpSet(p, out)


def restricted_sumset(A: FpSet, B: FpSet) -> FpSet:
    A._check(B)
    p, mask, out = A.p, (1 << A.p) - 1, 0
    for a in A:
        out |= rotate(B.bits & ~(1 << a), a, p, mask)
    return FpSet(p, out)


def subsum_table(A: FpSet) -> SubsumTable:
    p, mask = A.p, (1 << A.p) - 1
    rows = [1]
    for a in A:
        rows.append(0)
        # downward in k so each element is used at most once
        for k in range(len(rows) - 1, 0, -1):
            rows[k] |= rotate(rows[k - 1], a, p, mask)
    return SubsumTable(A, tuple(rows))


def hfold(A: FpSet, h: int, table: SubsumTable | None = None) -> FpSet:
    if not 0 <= h <= len(A):
        raise BadH(f"h={h} outside [0, {len(A)}]")
    return (table or subsum_table(A)).row(h)


def sigma_double(A: FpSet, alpha: int, beta: int, table: SubsumTable | None = None) -> FpSet:
    """Sums of at least ``alpha`` and at most ``|A| - beta`` distinct elements."""
    d = len(A)
    if alpha < 0 or beta < 0 or alpha > d - beta:
        raise BadBounds(f"empty range: alpha={alpha}, beta={beta}, |A|={d}")
    return (table or subsum_table(A)).union(alpha, d - beta)


def sigma_lower(A: FpSet, alpha: int, table: SubsumTable | None = None) -> FpSet:
    return sigma_double(A, alpha, 0, table)


def sigma_upper(A: FpSet, alpha: int, table: SubsumTable | None = None) -> FpSet:
    return sigma_double(A, 0, alpha, table)


def sigma_all(A: FpSet) -> FpSet:
    return sigma_lower(A, 0)


def sigma_star(A: FpSet) -> FpSet:
    """Nonempty subsums; empty for empty A."""
    if len(A) == 0:
        return FpSet(A.p)
    return sigma_lower(A, 1)


def is_asymmetric(A: FpSet) -> bool:
    return A.bits & A.negate().bits == 0


def brute_subsum_rows(p: int, values: Sequence[int]) -> list[set[int]]:
    """Enumerate every subset; an oracle for :func:`subsum_table`."""
    d = len(values)
    rows: list[set[int]] = [set() for _ in range(d + 1)]
    for mask in range(1 << d):
        s = k = 0
        for i in range(d):
            if mask >> i & 1:
                s += values[i]
                k += 1
        rows[k].add(s % p)
    return rows


def count_profile(A: FpSet) -> tuple[np.ndarray, np.ndarray]:
    """Per residue, the fewest and the most distinct elements of A summing to it.

    Unreachable residues hold ``-1`` in both arrays.  Since
    ``Sigma_alpha = {x : most(x) >= alpha}`` and
    ``Sigma^alpha = {x : fewest(x) <= |A| - alpha}``, this yields every
    one-sided bound in O(|A| p) vector work.  Only ``most`` is computed by
    dynamic programming; ``fewest(x) = |A| - most(s - x)`` with s the sum of A.
    """
    p, d = A.p, len(A)
    dt = np.int16 if d < 16000 else np.int32
    floor = np.iinfo(dt).min // 2  # unreachable, stays negative after d increments
    most = np.full(p, floor, dtype=dt)
    most[0] = 0
    buf = np.empty_like(most)
    for a in A:
        if a:
            buf[a:] = most[: p - a]
            buf[:a] = most[p - a :]
        else:
            buf[:] = most
        buf += 1
        np.maximum(most, buf, out=most)
    most = np.where(most < 0, -1, most).astype(np.int32)
    s = A.total()
    reflected = most[(s - np.arange(p)) % p]
    fewest = np.where(reflected < 0, -1, d - reflected).astype(np.int32)
    return fewest, most


def sigma_sizes_from_profile(fewest: np.ndarray, most: np.ndarray, d: int) -> tuple[list[int], list[int]]:
    """``(|Sigma_alpha|, |Sigma^alpha|)`` for alpha = 0..d."""
    reach = most >= 0
    hist_most = np.bincount(most[reach], minlength=d + 1)
    hist_few = np.bincount(fewest[reach], minlength=d + 1)
    lower = np.cumsum(hist_most[::-1])[::-1]  # #{most >= alpha}
    upper = np.cumsum(hist_few)[::-1]  # #{fewest <= d - alpha}
    return [int(x) for x in lower[: d + 1]], [int(x) for x in upper[: d + 1]]
