"""Words over {A, B, C}, the Leech substitution and prefixes of its fixed point.

Words are plain uppercase ``str`` values. Positions are 0-based everywhere so
that the block containing position ``p`` is simply ``p // 13``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Mapping

import numpy as np

ALPHABET = "ABC"
BLOCK_LENGTH = 13
DEFAULT_MAX_DEPTH = 7  # 13**7 = 62,748,517 letters


class WordError(ValueError):
    """Raised for malformed words or requests outside the generated prefix."""


class DepthError(ValueError):
    """Raised when a prefix depth is negative or above the generation ceiling."""


def check_word(w: str, *, allow_empty: bool = False) -> str:
    if not isinstance(w, str):
        raise WordError(f"word must be a str, got {type(w).__name__}")
    if not w and not allow_empty:
        raise WordError("word must be nonempty")
    bad = set(w) - set(ALPHABET)
    if bad:
        raise WordError(f"letters outside {{A,B,C}} in {w!r}: {''.join(sorted(bad))}")
    return w


def max_depth() -> int:
    """Generation ceiling, raised by setting ``LEECH_MAX_DEPTH``."""
    raw = os.environ.get("LEECH_MAX_DEPTH")
    if raw is None:
        return DEFAULT_MAX_DEPTH
    try:
        return int(raw)
    except ValueError as exc:
        raise DepthError(f"LEECH_MAX_DEPTH must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class Morphism:
    """A letter-to-word map extended to words by concatenation."""

    images: Mapping[str, str]
    name: str = ""
    _table: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if set(self.images) != set(ALPHABET):
            raise WordError(f"morphism must map exactly {ALPHABET}")
        for letter, image in self.images.items():
            check_word(image)
        object.__setattr__(self, "images", dict(sorted(self.images.items())))
        object.__setattr__(self, "_table", str.maketrans(dict(self.images)))

    def __hash__(self):
        return hash(tuple(self.images.items()))

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(v) for v in self.images.values()}
        return lengths.pop() if len(lengths) == 1 else None

    def __call__(self, w: str) -> str:
        return apply_morphism(self, w)


def apply_morphism(m: Morphism, w: str) -> str:
    check_word(w)
    return w.translate(m._table)


LEECH = Morphism(
    {"A": "ABCBACBCABCBA", "B": "BCACBACABCACB", "C": "CABACBABCABAC"}, name="P"
)
ROT = Morphism({"A": "B", "B": "C", "C": "A"}, name="rot")
REF = Morphism({"A": "A", "B": "C", "C": "B"}, name="ref")
IDENTITY = Morphism({"A": "A", "B": "B", "C": "C"}, name="id")

_ROT_TABLE = str.maketrans("ABC", "BCA")
_REF_TABLE = str.maketrans("ABC", "ACB")


def rotate(w: str) -> str:
    return check_word(w, allow_empty=True).translate(_ROT_TABLE)


def reflect(w: str) -> str:
    return check_word(w, allow_empty=True).translate(_REF_TABLE)


def rotation_orbit(w: str) -> tuple[str, str, str]:
    r = rotate(w)
    return (w, r, rotate(r))


def canonical_rotation(w: str) -> str:
    """Lexicographically least member of the rotation orbit of ``w``."""
    return min(rotation_orbit(w))


def _check_depth(n: int) -> None:
    if n < 0:
        raise DepthError(f"depth must be >= 0, got {n}")
    ceiling = max_depth()
    if n > ceiling:
        raise DepthError(
            f"depth {n} exceeds the generation ceiling {ceiling} "
            "(raise it with LEECH_MAX_DEPTH)"
        )


_BLOCK_CODES = np.array(
    [[ord(ch) - 65 for ch in LEECH.images[x]] for x in ALPHABET], dtype=np.uint8
)


@lru_cache(maxsize=None)
def _prefix_codes(n: int) -> np.ndarray:
    if n == 0:
        arr = np.zeros(1, dtype=np.uint8)
    else:
        arr = _BLOCK_CODES[_prefix_codes(n - 1)].ravel()
    arr.setflags(write=False)
    return arr


def prefix_codes(n: int) -> np.ndarray:
    """``P^n(A)`` as a read-only uint8 array with A=0, B=1, C=2."""
    _check_depth(n)
    return _prefix_codes(n)


@lru_cache(maxsize=None)
def _leech_prefix(n: int) -> str:
    return (_prefix_codes(n) + 65).tobytes().decode("ascii")


def leech_prefix(n: int) -> str:
    """Return ``P^n(A)``, the prefix of length ``13**n`` of the Leech word.

    Prefixes are cached; depth 7 (about 63M letters) is the default ceiling.
    """
    _check_depth(n)
    return _leech_prefix(n)


def occurrences(needle: str, haystack: str) -> list[int]:
    check_word(needle)
    out = []
    find = haystack.find
    i = find(needle)
    while i >= 0:
        out.append(i)
        i = find(needle, i + 1)
    return out


def _prefix_for(length: int, depth: int) -> str:
    w = leech_prefix(depth)
    if length > len(w):
        raise WordError(f"length {length} exceeds the prefix length {len(w)} at depth {depth}")
    return w


def is_factor(w: str, depth: int) -> bool:
    check_word(w)
    return w in _prefix_for(len(w), depth)


@dataclass(frozen=True)
class FactorSet:
    length: int
    members: frozenset
    depth_used: int
    stabilized: bool

    def sorted(self) -> list[str]:
        return sorted(self.members)

    def orbits(self) -> list[str]:
        """Canonical representatives of the rotation orbits."""
        return sorted({canonical_rotation(f) for f in self.members})

    def __len__(self):
        return len(self.members)

    def __contains__(self, w):
        return w in self.members


@lru_cache(maxsize=256)
def _factors(m: int, n: int) -> frozenset:
    w = _prefix_for(m, n)
    return frozenset(w[i : i + m] for i in range(len(w) - m + 1))


def factor_set(m: int, depth: int) -> FactorSet:
    """All distinct length-``m`` factors of ``P^depth(A)``.

    ``stabilized`` means the depth-1 prefix already has the same factors.
    Every factor of ``P^(n+1)(A)`` lies in the image of a factor of
    ``P^n(A)``, so a stabilized set is taken as the set of factors of L.
    """
    if m < 1:
        raise WordError(f"factor length must be >= 1, got {m}")
    members = _factors(m, depth)
    stabilized = depth >= 1 and BLOCK_LENGTH ** (depth - 1) >= m and _factors(m, depth - 1) == members
    return FactorSet(m, members, depth, stabilized)


def stable_depth(m: int, start: int = 1) -> int:
    """Smallest depth at which the length-``m`` factor set is stabilized."""
    n = max(start, 1)
    while BLOCK_LENGTH ** (n - 1) < m:
        n += 1
    while n <= max_depth():
        if factor_set(m, n).stabilized:
            return n
        n += 1
    raise DepthError(f"length-{m} factors do not stabilize below the ceiling {max_depth()}")


def find_square(w: str, p_max: int) -> tuple[int, int] | None:
    """Leftmost, then shortest, square ``xx`` with ``|x| <= p_max``.

    One vectorised pass per period: a square of period ``p`` starts at ``i``
    exactly when ``w[j] == w[j + p]`` for the ``p`` indices from ``i``.
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    a = np.frombuffer(w.encode("ascii"), dtype=np.uint8)
    best = None
    for p in range(1, min(p_max, len(a) // 2) + 1):
        if best is not None and best[0] == 0:
            break
        eq = a[:-p] == a[p:]
        csum = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        full = np.flatnonzero(csum[p:] - csum[:-p] == p)
        # runs may cover positions whose square would overrun the word
        full = full[full + 2 * p <= len(a)]
        if full.size and (best is None or full[0] < best[0]):
            best = (int(full[0]), p)
    return best


@dataclass
class SquarefreeCertificate:
    morphism: str
    passed: bool
    max_test_length: int
    checked: list = field(default_factory=list)  # (word, image, square or None)

    @property
    def witness(self):
        return next(((w, img, sq) for w, img, sq in self.checked if sq is not None), None)


def squarefree_words(max_len: int) -> list[str]:
    out = []
    for n in range(1, max_len + 1):
        out.extend(
            w for w in ("".join(t) for t in product(ALPHABET, repeat=n))
            if find_square(w, n) is None
        )
    return out


def certify_squarefree_morphism(m: Morphism, max_test_length: int = 3) -> SquarefreeCertificate:
    """Finite squarefreeness test for a uniform morphism.

    By Crochemore's criterion (Theor. Comp. Sci. 18, 1982), a uniform
    morphism on three letters is squarefree iff it maps every squarefree word
    of length 3 to a squarefree word. Shorter words are checked too.
    """
    if m.uniform_length is None:
        raise WordError(f"morphism {m.name or m.images} is not uniform")
    cert = SquarefreeCertificate(m.name or str(m.images), True, max_test_length)
    for w in squarefree_words(max_test_length):
        image = apply_morphism(m, w)
        sq = find_square(image, max(1, len(image) // 2))
        cert.checked.append((w, image, sq))
        if sq is not None:
            cert.passed = False
    return cert
