"""Patterns over the variables a, b, c, their substitution instances, and
local instances anchored in a prefix of L."""

from __future__ import annotations

from dataclasses import dataclass

from .words import LEECH, BLOCK_LENGTH, WordError, check_word, leech_prefix

VARIABLES = "abc"


@dataclass(frozen=True)
class Pattern:
    symbols: str
    name: str = ""

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("pattern must be nonempty")
        bad = set(self.symbols) - set(VARIABLES)
        if bad:
            raise ValueError(f"pattern symbols must be in {{a,b,c}}, got {''.join(sorted(bad))}")

    @property
    def variables(self) -> str:
        """Variables in order of first appearance."""
        return "".join(dict.fromkeys(self.symbols))

    def count(self, v: str) -> int:
        return self.symbols.count(v)

    def __str__(self):
        return self.name or self.symbols


KAPPA1 = Pattern("abacbcabac", "kappa1")
KAPPA2 = Pattern("abacbcaba", "kappa2")
KAPPA3 = Pattern("cabacbcaba", "kappa3")
KAPPA4 = Pattern("cabacbcabac", "kappa4")
NAMED_PATTERNS = {p.name: p for p in (KAPPA1, KAPPA2, KAPPA3, KAPPA4)}


def pattern_from_name(text: str) -> Pattern:
    """Accept ``kappa2``, ``k2`` or a literal variable word like ``abacbcaba``."""
    key = text.strip().lower()
    if key in NAMED_PATTERNS:
        return NAMED_PATTERNS[key]
    if len(key) == 2 and key[0] == "k" and f"kappa{key[1]}" in NAMED_PATTERNS:
        return NAMED_PATTERNS[f"kappa{key[1]}"]
    if text != text.lower():
        raise ValueError(f"pattern {text!r} must be written with lowercase variables")
    for p in NAMED_PATTERNS.values():
        if p.symbols == text:
            return p
    return Pattern(text)


@dataclass(frozen=True, order=True)
class Assignment:
    """Keywords for the variables; ``None`` marks a variable a pattern does not use."""

    a: str | None = None
    b: str | None = None
    c: str | None = None

    def __post_init__(self):
        for v in VARIABLES:
            w = getattr(self, v)
            if w is not None:
                check_word(w)

    def __getitem__(self, v: str) -> str:
        w = getattr(self, v) if v in VARIABLES else None
        if w is None:
            raise KeyError(v)
        return w

    def lengths(self) -> tuple[int, ...]:
        return tuple(len(getattr(self, v) or "") for v in VARIABLES)

    def map(self, f) -> Assignment:
        return Assignment(*(None if w is None else f(w) for w in (self.a, self.b, self.c)))

    def sort_key(self):
        return self.lengths() + tuple(getattr(self, v) or "" for v in VARIABLES)

    def __str__(self):
        return "<" + ",".join(w for w in (self.a, self.b, self.c) if w is not None) + ">"


def instantiate(p: Pattern, s: Assignment) -> str:
    try:
        return "".join(s[v] for v in p.symbols)
    except KeyError as exc:
        raise WordError(f"assignment {s} has no keyword for variable {exc.args[0]!r}") from None


def slot_offsets(p: Pattern, s: Assignment) -> dict[str, list[int]]:
    """Start offset of every slot of each variable, relative to the instance start."""
    out: dict[str, list[int]] = {v: [] for v in p.variables}
    pos = 0
    for v in p.symbols:
        out[v].append(pos)
        pos += len(s[v])
    return out


@dataclass(frozen=True)
class LocalInstance:
    """An occurrence of ``instantiate(pattern, assignment)`` at ``anchor`` in ``P^depth(A)``.

    ``anchor`` is the length of the context word preceding the instance.
    """

    pattern: Pattern
    assignment: Assignment
    anchor: int
    depth: int

    @property
    def word(self) -> str:
        return instantiate(self.pattern, self.assignment)

    def __len__(self):
        return sum(len(self.assignment[v]) for v in self.pattern.symbols)

    def slots(self, v: str) -> list[int]:
        """Absolute start positions of the slots of variable ``v``."""
        return [self.anchor + o for o in slot_offsets(self.pattern, self.assignment)[v]]

    def is_valid(self) -> bool:
        w = leech_prefix(self.depth)
        return self.anchor >= 0 and w.startswith(self.word, self.anchor)

    def validate(self) -> LocalInstance:
        if not self.is_valid():
            raise WordError(f"{self.assignment} does not occur at {self.anchor} at depth {self.depth}")
        return self

    def expand(self) -> LocalInstance:
        """The image under P, anchored at 13 times the anchor one level deeper."""
        return LocalInstance(
            self.pattern, self.assignment.map(LEECH), BLOCK_LENGTH * self.anchor, self.depth + 1
        )

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.symbols,
            "assignment": {v: self.assignment[v] for v in self.pattern.variables},
            "anchor": self.anchor,
            "depth": self.depth,
        }

    @classmethod
    def from_dict(cls, d: dict) -> LocalInstance:
        return cls(pattern_from_name(d["pattern"]), Assignment(**d["assignment"]), d["anchor"], d["depth"])
