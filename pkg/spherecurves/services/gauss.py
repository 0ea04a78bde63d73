"""Based, arrow-decorated Gauss words.

A word is a sequence of signed chord ids read from the base point along the
curve orientation: a positive id is the head of its arrow (the under pass of the
all-negative knot diagram), a negative id is the tail. Every operation here is
pure and returns fresh immutable values.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from ..core.errors import WordSyntaxError, WordValidationError

logger = logging.getLogger(__name__)

Code = Tuple[int, ...]


class Role(str, Enum):
    HEAD = "head"
    TAIL = "tail"


class KeyMode(str, Enum):
    BASED = "based"
    UNBASED = "unbased"
    UNBASED_UNORIENTED = "unbased-unoriented"


class Token(NamedTuple):
    chord: int
    role: Role

    @property
    def signed(self) -> int:
        return self.chord if self.role is Role.HEAD else -self.chord


class BasedDecoratedWord:
    """An immutable based arrow diagram stored as a tuple of signed ids."""

    __slots__ = ("_code",)

    def __init__(self, code: Iterable[int] = (), check: bool = True):
        code = tuple(int(t) for t in code)
        if check:
            validate_code(code)
        object.__setattr__(self, "_code", code)

    def __setattr__(self, name, value):
        raise AttributeError("BasedDecoratedWord is immutable")

    @classmethod
    def from_tokens(cls, tokens: Iterable[Token]) -> "BasedDecoratedWord":
        return cls(t.signed for t in tokens)

    @property
    def code(self) -> Code:
        return self._code

    @property
    def tokens(self) -> Tuple[Token, ...]:
        return tuple(Token(abs(t), Role.HEAD if t > 0 else Role.TAIL) for t in self._code)

    @property
    def n(self) -> int:
        """Number of chords (double points)."""
        return len(self._code) // 2

    def chords(self) -> List[int]:
        return sorted({abs(t) for t in self._code})

    def positions(self) -> Dict[int, Tuple[int, int]]:
        """Map chord id -> (head position, tail position)."""
        heads: Dict[int, int] = {}
        tails: Dict[int, int] = {}
        for i, t in enumerate(self._code):
            (heads if t > 0 else tails)[abs(t)] = i
        return {c: (heads[c], tails[c]) for c in heads}

    def partner(self) -> List[int]:
        """partner[i] is the other position of the chord at position i."""
        first: Dict[int, int] = {}
        out = [0] * len(self._code)
        for i, t in enumerate(self._code):
            c = abs(t)
            if c in first:
                j = first[c]
                out[i], out[j] = j, i
            else:
                first[c] = i
        return out

    def __len__(self) -> int:
        return len(self._code)

    def __iter__(self) -> Iterator[int]:
        return iter(self._code)

    def __eq__(self, other) -> bool:
        if isinstance(other, BasedDecoratedWord):
            return self._code == other._code
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._code)

    def __repr__(self) -> str:
        return f"BasedDecoratedWord({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Canonical form of a word; ``order`` encodes chord k as 2k (head) / 2k+1 (tail)."""

    order: Tuple[int, ...]
    mode: KeyMode = KeyMode.BASED

    @property
    def code(self) -> Code:
        return tuple(-(v >> 1) if v & 1 else v >> 1 for v in self.order)

    def word(self) -> BasedDecoratedWord:
        return BasedDecoratedWord(self.code, check=False)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.code)


def validate_code(code: Sequence[int]) -> None:
    seen: Dict[int, List[int]] = {}
    for t in code:
        if t == 0:
            raise WordSyntaxError("zero is not a valid token")
        seen.setdefault(abs(t), []).append(t)
    for chord, occ in seen.items():
        if len(occ) != 2:
            raise WordValidationError(
                f"chord {chord} appears {len(occ)} times", {"chord": chord, "count": len(occ)}
            )
        if (occ[0] > 0) == (occ[1] > 0):
            role = "head" if occ[0] > 0 else "tail"
            raise WordValidationError(
                f"chord {chord} has two {role}s", {"chord": chord, "role": role}
            )


def parse(text: str) -> BasedDecoratedWord:
    """Parse whitespace- (or comma-) separated signed integers."""
    code = []
    for raw in text.replace(",", " ").split():
        try:
            code.append(int(raw))
        except ValueError:
            raise WordSyntaxError(f"malformed token {raw!r}", {"token": raw}) from None
    return BasedDecoratedWord(code)


def to_text(w: BasedDecoratedWord) -> str:
    return " ".join(str(t) for t in w.code)


def to_json(w: BasedDecoratedWord) -> List[int]:
    return list(w.code)


EMPTY = BasedDecoratedWord(())


# -- canonical forms ------------------------------------------------------

def relabel(code: Sequence[int]) -> Code:
    """Rename chords 1, 2, ... in order of first occurrence; roles unchanged."""
    names: Dict[int, int] = {}
    out = []
    for t in code:
        c = abs(t)
        k = names.get(c)
        if k is None:
            k = names[c] = len(names) + 1
        out.append(k if t > 0 else -k)
    return tuple(out)


def order_of(code: Sequence[int]) -> Tuple[int, ...]:
    return tuple(2 * abs(t) + (t < 0) for t in code)


def _rotations(code: Code) -> Iterator[Code]:
    for k in range(len(code)):
        yield code[k:] + code[:k]


def min_rotation_order(code: Code) -> Tuple[int, ...]:
    if not code:
        return ()
    return min(order_of(relabel(r)) for r in _rotations(code))


def unoriented_order(code: Code) -> Tuple[int, ...]:
    if not code:
        return ()
    return min(min_rotation_order(code), min_rotation_order(code[::-1]))


def canonicalize(w: BasedDecoratedWord) -> CanonicalKey:
    return CanonicalKey(order_of(relabel(w.code)), KeyMode.BASED)


def unbased_key(w: BasedDecoratedWord) -> CanonicalKey:
    return CanonicalKey(min_rotation_order(w.code), KeyMode.UNBASED)


def unoriented_key(w: BasedDecoratedWord) -> CanonicalKey:
    return CanonicalKey(unoriented_order(w.code), KeyMode.UNBASED_UNORIENTED)


def canonical_key(w: BasedDecoratedWord, mode: KeyMode = KeyMode.BASED) -> CanonicalKey:
    mode = KeyMode(mode)
    if mode is KeyMode.BASED:
        return canonicalize(w)
    if mode is KeyMode.UNBASED:
        return unbased_key(w)
    return unoriented_key(w)


def normalize(w: BasedDecoratedWord) -> BasedDecoratedWord:
    """The canonical based representative as a word."""
    return BasedDecoratedWord(relabel(w.code), check=False)


# -- symmetries -----------------------------------------------------------

def rotate_base(w: BasedDecoratedWord, k: int) -> BasedDecoratedWord:
    """Move the base point forward across ``k`` arrow endpoints."""
    if not w.code:
        return w
    k %= len(w.code)
    return BasedDecoratedWord(relabel(w.code[k:] + w.code[:k]), check=False)


def reverse_orientation(w: BasedDecoratedWord) -> BasedDecoratedWord:
    """Reflect the diagram: reading order reverses, roles stay."""
    return BasedDecoratedWord(relabel(w.code[::-1]), check=False)


def mirror(w: BasedDecoratedWord) -> BasedDecoratedWord:
    """Reflect the ambient sphere: every head becomes a tail."""
    return BasedDecoratedWord(relabel(tuple(-t for t in w.code)), check=False)


# -- sub-diagrams and sums ------------------------------------------------

def subword(w: BasedDecoratedWord, chords: Iterable[int]) -> BasedDecoratedWord:
    keep = set(chords)
    unknown = keep - set(w.chords())
    if unknown:
        raise WordValidationError(
            f"unknown chord ids {sorted(unknown)}", {"unknown": sorted(unknown)}
        )
    return BasedDecoratedWord(relabel(tuple(t for t in w.code if abs(t) in keep)), check=False)


def connected_sum(
    w1: BasedDecoratedWord, w2: BasedDecoratedWord, arc1: int = 0, arc2: int = 0
) -> BasedDecoratedWord:
    """Splice ``w2``, re-based at gap ``arc2``, into gap ``arc1`` of ``w1``."""
    for label, arc, w in (("arc1", arc1, w1), ("arc2", arc2, w2)):
        if not 0 <= arc <= len(w):
            raise WordValidationError(
                f"{label}={arc} outside 0..{len(w)}", {label: arc, "length": len(w)}
            )
    shift = max((abs(t) for t in w1.code), default=0)
    inner = w2.code[arc2:] + w2.code[:arc2]
    inner = tuple(t + shift if t > 0 else t - shift for t in inner)
    return BasedDecoratedWord(relabel(w1.code[:arc1] + inner + w1.code[arc1:]), check=False)


# -- interlacement --------------------------------------------------------

def interlaced(w: BasedDecoratedWord, i: int, j: int) -> bool:
    """Whether chords ``i`` and ``j`` alternate around the circle."""
    pos = w.positions()
    a, b = sorted(pos[i])
    inside = sum(1 for p in pos[j] if a < p < b)
    return inside == 1


def interlacement(w: BasedDecoratedWord) -> Dict[int, List[int]]:
    """Chord id -> sorted ids of the chords interlaced with it."""
    partner = w.partner()
    code = w.code
    graph: Dict[int, List[int]] = {abs(t): [] for t in code}
    for i, t in enumerate(code):
        j = partner[i]
        if j < i:
            continue
        counts: Dict[int, int] = {}
        for p in range(i + 1, j):
            c = abs(code[p])
            counts[c] = counts.get(c, 0) + 1
        graph[abs(t)] = sorted(c for c, k in counts.items() if k == 1)
    return graph


def gauss_from_dt(codes: Sequence[int]) -> Code:
    """Undecorated Gauss sequence (first-occurrence labels) of a DT even code.

    Odd position 2k-1 is paired with ``|codes[k-1]|``; signs (over/under) are ignored.
    """
    evens = [abs(int(c)) for c in codes]
    n = len(evens)
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise WordValidationError(f"not a DT code: {list(codes)}", {"codes": list(codes)})
    chord_at: Dict[int, int] = {}
    for k, even in enumerate(evens, start=1):
        chord_at[2 * k - 1] = k
        chord_at[even] = k
    return relabel(tuple(chord_at[p] for p in range(1, 2 * n + 1)))
