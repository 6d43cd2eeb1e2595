"""The 13-letter block grid of L: matrices, rigidity, flushness, de-substitution,
and the shift/reduction procedure for local instances of a pattern.

L is the fixed point of P anchored at position 0, so its blocks sit at the
multiples of 13. A matrix of an occurrence is the run of grid blocks covering
it, recorded as the preimage word under P together with the offset of the
occurrence inside the first block. Two occurrences share a matrix position
exactly when these pairs are equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .pattern import Assignment, LocalInstance
from .words import (
    ALPHABET,
    BLOCK_LENGTH,
    LEECH,
    WordError,
    check_word,
    factor_set,
    leech_prefix,
    occurrences,
)

N = BLOCK_LENGTH


class NotAFactorError(WordError):
    pass


class StabilizationError(ValueError):
    """The factor set of the needed length has not stabilized at this depth."""


class RigidityError(ValueError):
    """No keyword of a local instance is locally rigid."""


class InvariantError(AssertionError):
    """A property the reduction relies on failed; never expected on valid input."""


class Flush(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"
    NONE = "none"


def block_of(letter: str) -> str:
    if letter not in ALPHABET or len(letter) != 1:
        raise WordError(f"not a letter: {letter!r}")
    return LEECH.images[letter]


_BLOCK_BY_FIRST = {block_of(x)[0]: x for x in ALPHABET}


@dataclass(frozen=True, order=True)
class MatrixDecomposition:
    preimage: str
    offset: int

    @property
    def matrix(self) -> str:
        return LEECH(self.preimage)

    def flush(self, length: int) -> Flush:
        return flush_status(self, length)

    def to_dict(self, length: int | None = None) -> dict:
        d = {"preimage": self.preimage, "offset": self.offset}
        if length is not None:
            f = flush_status(self, length)
            d["left_flush"] = f in (Flush.LEFT, Flush.BOTH)
            d["right_flush"] = f in (Flush.RIGHT, Flush.BOTH)
        return d


def matrix_of_occurrence(pos: int, length: int, depth: int) -> MatrixDecomposition:
    if depth < 1:
        raise ValueError("matrices need depth >= 1")
    if pos < 0 or length < 1 or pos + length > N**depth:
        raise WordError(f"occurrence [{pos}, {pos + length}) outside P^{depth}(A)")
    parent = leech_prefix(depth - 1)
    return MatrixDecomposition(parent[pos // N : (pos + length - 1) // N + 1], pos % N)


def flush_status(d: MatrixDecomposition, length: int) -> Flush:
    left = d.offset == 0
    right = d.offset + length == N * len(d.preimage)
    if left and right:
        return Flush.BOTH
    if left:
        return Flush.LEFT
    if right:
        return Flush.RIGHT
    return Flush.NONE


@dataclass(frozen=True)
class RigidityReport:
    subject: str
    decompositions: tuple[MatrixDecomposition, ...]
    depth: int

    @property
    def rigid(self) -> bool:
        return len(self.decompositions) == 1

    @property
    def flush_flags(self) -> list[Flush]:
        return [flush_status(d, len(self.subject)) for d in self.decompositions]

    @property
    def blush(self) -> bool:
        return self.rigid and self.flush_flags[0] is Flush.BOTH

    @property
    def preimages(self) -> list[str]:
        """Preimage of every (matrix, position) pair; repeats mark several positions."""
        return [d.preimage for d in self.decompositions]

    def to_dict(self) -> dict:
        n = len(self.subject)
        return {
            "subject": self.subject,
            "depth": self.depth,
            "decompositions": [d.to_dict(n) for d in self.decompositions],
            "rigid": self.rigid,
            "blush": self.blush,
        }

    @classmethod
    def from_dict(cls, d: dict) -> RigidityReport:
        decs = tuple(MatrixDecomposition(x["preimage"], x["offset"]) for x in d["decompositions"])
        return cls(d["subject"], decs, d["depth"])

    def to_text(self) -> str:
        lines = [f"{self.subject}  depth={self.depth}  rigid={self.rigid}  blush={self.blush}"]
        n = len(self.subject)
        width = max(len(d.preimage) for d in self.decompositions)
        for d in self.decompositions:
            lines.append(f"  {d.preimage:<{width}}  offset={d.offset:>2}  flush={flush_status(d, n).value}")
        return "\n".join(lines)


def matrices(w: str, depth: int) -> RigidityReport:
    check_word(w)
    fs = factor_set(len(w), depth)
    if not fs.stabilized:
        raise StabilizationError(f"factors of length {len(w)} are not stabilized at depth {depth}")
    if w not in fs:
        raise NotAFactorError(f"{w} is not a factor of L")
    n = len(w)
    decs = {matrix_of_occurrence(p, n, depth) for p in occurrences(w, leech_prefix(depth))}
    return RigidityReport(w, tuple(sorted(decs)), depth)


def is_rigid(w: str, depth: int) -> bool:
    return matrices(w, depth).rigid


def desubstitute(w: str) -> str:
    """Parse a concatenation of blocks back into its preimage under P."""
    check_word(w)
    if len(w) % N:
        raise WordError(f"length {len(w)} is not a multiple of {N}")
    out = []
    for i in range(0, len(w), N):
        chunk = w[i : i + N]
        letter = _BLOCK_BY_FIRST[chunk[0]]
        if LEECH.images[letter] != chunk:
            raise WordError(f"chunk {chunk} at {i} is not an L-block")
        out.append(letter)
    return "".join(out)


# Local instances


def slot_matrices(inst: LocalInstance, v: str, depth: int | None = None) -> list[MatrixDecomposition]:
    n = inst.depth if depth is None else depth
    length = len(inst.assignment[v])
    return [matrix_of_occurrence(p, length, n) for p in inst.slots(v)]


def is_locally_rigid(inst: LocalInstance, v: str, depth: int | None = None) -> bool:
    """All slots of keyword ``v`` in this instance share one (matrix, position)."""
    if depth is not None and depth != inst.depth:
        inst = replace(inst, depth=depth)
    inst.validate()
    return len(set(slot_matrices(inst, v))) == 1


def locally_rigid_keywords(inst: LocalInstance) -> list[str]:
    return [v for v in inst.pattern.variables if is_locally_rigid(inst, v)]


def is_keyword_flush(inst: LocalInstance, v: str) -> bool:
    """Some slot of ``v`` begins or ends at a block boundary."""
    length = len(inst.assignment[v])
    return any(flush_status(d, length) is not Flush.NONE for d in slot_matrices(inst, v))


def is_keyword_blush(inst: LocalInstance, v: str) -> bool:
    length = len(inst.assignment[v])
    decs = slot_matrices(inst, v)
    return len(set(decs)) == 1 and flush_status(decs[0], length) is Flush.BOTH


@dataclass(frozen=True)
class ShiftPlan:
    gamma_len: int
    delta_len: int
    m: int
    direction: str  # "left", "right" or "none"
    keyword: str
    mixed_flush: bool = False  # a keyword that is not locally rigid touches a block boundary

    def to_dict(self) -> dict:
        return {
            "keyword": self.keyword,
            "gamma_len": self.gamma_len,
            "delta_len": self.delta_len,
            "m": self.m,
            "direction": self.direction,
            "mixed_flush": self.mixed_flush,
        }


def plan_shift(gamma_len: int, delta_len: int) -> tuple[int, str]:
    """Shortest move from a keyword boundary to a block boundary.

    ``gamma_len`` letters of the first block precede the keyword and
    ``delta_len`` letters of the last block follow it.
    """
    options = [
        (gamma_len, "left"),
        (delta_len, "right"),
        (N - gamma_len, "right"),
        (N - delta_len, "left"),
    ]
    m, direction = min(options, key=lambda t: t[0])
    return m, direction


def _read_instance(inst: LocalInstance, anchor: int) -> LocalInstance:
    w = leech_prefix(inst.depth)
    if anchor < 0 or anchor + len(inst) > len(w):
        raise WordError(f"shifted instance at {anchor} leaves P^{inst.depth}(A)")
    pos = anchor
    words = {}
    for v in inst.pattern.symbols:
        length = len(inst.assignment[v])
        chunk = w[pos : pos + length]
        if words.setdefault(v, chunk) != chunk:
            raise InvariantError(f"keyword {v} is incoherent after shifting to {anchor}")
        pos += length
    return LocalInstance(inst.pattern, Assignment(**words), anchor, inst.depth)


def shift_to_flush(inst: LocalInstance, depth: int | None = None) -> tuple[LocalInstance, ShiftPlan]:
    """Slide every keyword boundary so that a locally rigid keyword becomes flush.

    Already-flush input is returned unchanged with ``m = 0``.
    """
    if depth is not None and depth != inst.depth:
        inst = replace(inst, depth=depth)
    inst.validate()
    rigid = locally_rigid_keywords(inst)
    if not rigid:
        raise RigidityError(f"no keyword of {inst.assignment} at {inst.anchor} is locally rigid")
    mixed = any(is_keyword_flush(inst, v) for v in inst.pattern.variables if v not in rigid)

    plans = []
    for v in rigid:
        d = slot_matrices(inst, v)[0]
        gamma = d.offset
        delta = N * len(d.preimage) - d.offset - len(inst.assignment[v])
        if flush_status(d, len(inst.assignment[v])) is not Flush.NONE:
            return inst, ShiftPlan(gamma, delta, 0, "none", v, mixed)
        plans.append((v, gamma, delta))

    v, gamma, delta = plans[0]
    m, direction = plan_shift(gamma, delta)
    anchor = inst.anchor - m if direction == "left" else inst.anchor + m
    shifted = _read_instance(inst, anchor)
    if not any(is_locally_rigid(shifted, u) and is_keyword_flush(shifted, u) for u in shifted.pattern.variables):
        raise InvariantError("shift produced no locally rigid flush keyword")
    return shifted, ShiftPlan(gamma, delta, m, direction, v, mixed)


def reduce_instance(inst: LocalInstance, depth: int | None = None) -> LocalInstance:
    """One reduction round: shift to flush, then de-substitute keywords and context."""
    if depth is not None and depth != inst.depth:
        inst = replace(inst, depth=depth)
    if inst.depth < 1:
        raise ValueError("cannot reduce below depth 0")
    shifted, _ = shift_to_flush(inst)
    for v in shifted.pattern.variables:
        if not is_keyword_blush(shifted, v):
            raise InvariantError(f"keyword {v} is not blush after shifting")
    if shifted.anchor % N:
        raise InvariantError(f"shifted anchor {shifted.anchor} is off the block grid")
    try:
        assignment = shifted.assignment.map(desubstitute)
    except WordError as exc:
        raise InvariantError(f"de-substitution failed: {exc}") from exc
    reduced = LocalInstance(inst.pattern, assignment, shifted.anchor // N, inst.depth - 1)
    if not reduced.is_valid():
        raise InvariantError("reduced instance does not occur in the parent prefix")
    if reduced.anchor > (inst.anchor + 6) // N:
        raise InvariantError("reduced anchor exceeds the (anchor + 6) // 13 bound")
    return reduced


def reduce_fully(inst: LocalInstance) -> list[LocalInstance]:
    """Reduce until no keyword is locally rigid; returns the chain, input first."""
    chain = [inst]
    while inst.depth >= 1 and locally_rigid_keywords(inst):
        inst = reduce_instance(inst)
        chain.append(inst)
    return chain


def round_bound(length: int) -> int:
    """``floor(log_13 length)``, computed exactly on integers."""
    k, r = 0, N
    while r <= length:
        k += 1
        r *= N
    return k

