"""Exhaustive bounded search for pattern instances in prefixes of L."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from .blocks import StabilizationError, matrices
from .pattern import Assignment, LocalInstance, Pattern
from .words import BLOCK_LENGTH, DepthError, canonical_rotation, factor_set, leech_prefix, max_depth, prefix_codes

# 2 bits per letter in an int64 code
_CODE_SPAN = 31


@dataclass(frozen=True)
class SearchBounds:
    max_len: int | Mapping[str, int]
    depth: int

    def limit(self, v: str) -> int:
        if isinstance(self.max_len, int):
            return self.max_len
        return self.max_len[v]

    def validate(self, p: Pattern) -> None:
        limits = {v: self.limit(v) for v in p.variables}
        if min(limits.values()) < 1:
            raise ValueError("keyword bounds must be >= 1")
        if self.depth < 0 or self.depth > max_depth():
            raise DepthError(f"depth {self.depth} outside 0..{max_depth()}")
        longest = sum(limits[v] for v in p.symbols)
        if longest > BLOCK_LENGTH**self.depth:
            raise ValueError(
                f"instances up to {longest} letters do not fit in P^{self.depth}(A)"
            )


@dataclass
class SearchResult:
    pattern: Pattern
    bounds: SearchBounds
    instances: list[LocalInstance] = field(default_factory=list)

    @property
    def assignments(self) -> list[Assignment]:
        """Distinct assignments, ordered by keyword lengths then letters."""
        return sorted({i.assignment for i in self.instances}, key=Assignment.sort_key)

    def anchors(self, s: Assignment) -> list[int]:
        return [i.anchor for i in self.instances if i.assignment == s]

    def __len__(self):
        return len(self.instances)


@lru_cache(maxsize=64)
def _window_codes(depth: int, length: int) -> np.ndarray:
    """Exact integer code of every window of ``length <= 31`` letters."""
    a = prefix_codes(depth).astype(np.int64)
    n = a.size - length + 1
    codes = np.zeros(n, dtype=np.int64)
    for j in range(length):
        codes = (codes << 2) | a[j : j + n]
    return codes


def _windows_equal(depth: int, p: np.ndarray, q: np.ndarray, length: int) -> np.ndarray:
    eq = np.ones(p.size, dtype=bool)
    start = 0
    while start < length:
        span = min(_CODE_SPAN, length - start)
        codes = _window_codes(depth, span)
        eq &= codes[p + start] == codes[q + start]
        start += span
    return eq


def search_instances(p: Pattern, b: SearchBounds) -> SearchResult:
    """Every (assignment, anchor) with keywords within bounds whose instance
    occurs at that anchor of ``P^depth(A)``.

    The search walks the pattern left to right for all anchors at once: a new
    variable branches over its admissible lengths, a repeated variable keeps
    only the anchors where the window matches its first slot.
    """
    b.validate(p)
    text = leech_prefix(b.depth)
    size = len(text)
    symbols = p.symbols
    found: list[tuple[int, dict[str, int]]] = []

    def walk(i: int, off: int, lengths: dict, first: dict, anchors: np.ndarray) -> None:
        if anchors.size == 0:
            return
        if i == len(symbols):
            found.extend((int(a), lengths) for a in anchors)
            return
        v = symbols[i]
        if v in lengths:
            n = lengths[v]
            anchors = anchors[anchors + off + n <= size]
            keep = _windows_equal(b.depth, anchors + first[v], anchors + off, n)
            walk(i + 1, off + n, lengths, first, anchors[keep])
            return
        for n in range(1, b.limit(v) + 1):
            fitting = anchors[anchors + off + n <= size]
            walk(i + 1, off + n, {**lengths, v: n}, {**first, v: off}, fitting)

    walk(0, 0, {}, {}, np.arange(size, dtype=np.int64))

    instances = []
    for anchor, lengths in found:
        pos, words = anchor, {}
        for v in symbols:
            if v not in words:
                words[v] = text[pos : pos + lengths[v]]
            pos += lengths[v]
        instances.append(LocalInstance(p, Assignment(**words), anchor, b.depth))
    instances.sort(key=lambda i: (i.anchor,) + i.assignment.sort_key())
    return SearchResult(p, b, instances)


def longest_prefix_factor(w: str, depth: int) -> int:
    """Length of the longest prefix of ``w`` occurring in ``P^depth(A)``."""
    text = leech_prefix(depth)
    lo, hi = 0, min(len(w), len(text))
    # factors are closed under taking prefixes, so bisection is exact
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if w[:mid] in text:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass
class RigidityCensus:
    length: int
    depth: int
    rigid: list[str]
    nonrigid: list[str]

    @property
    def total(self) -> int:
        return len(self.rigid) + len(self.nonrigid)

    @property
    def orbits(self) -> list[str]:
        return sorted({canonical_rotation(w) for w in self.rigid + self.nonrigid})

    @property
    def rigid_orbits(self) -> list[str]:
        return sorted({canonical_rotation(w) for w in self.rigid})

    @property
    def nonrigid_orbits(self) -> list[str]:
        return sorted({canonical_rotation(w) for w in self.nonrigid})

    def summary(self) -> str:
        return (
            f"{self.total} factors, {len(self.rigid)} rigid; "
            f"nonrigid: {' '.join(self.nonrigid)}"
        )

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "depth": self.depth,
            "factors": self.total,
            "orbits": len(self.orbits),
            "rigid": self.rigid,
            "nonrigid": self.nonrigid,
            "rigid_orbits": self.rigid_orbits,
            "nonrigid_orbits": self.nonrigid_orbits,
        }


def rigidity_census(m: int, depth: int) -> RigidityCensus:
    fs = factor_set(m, depth)
    if not fs.stabilized:
        raise StabilizationError(f"factors of length {m} are not stabilized at depth {depth}")
    rigid, nonrigid = [], []
    for w in fs.sorted():
        (rigid if matrices(w, depth).rigid else nonrigid).append(w)
    return RigidityCensus(m, depth, rigid, nonrigid)

