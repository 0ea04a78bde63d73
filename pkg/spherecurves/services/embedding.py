"""Combinatorial map of a decorated word and sphere-realizability.

Darts are arc-ends. Arc ``j`` runs from the crossing at position ``j`` to the
crossing at position ``j + 1`` (mod 2n); dart ``2j`` is its start and dart
``2j + 1`` its end, so the edge involution is ``d ^ 1``.

At the crossing of a chord with head at position ``h`` and tail at ``t`` the
counterclockwise rotation of arc-ends is::

    (A_t out, A_h out, A_{t-1} in, A_{h-1} in)

i.e. the under pass (head) points 90 degrees counterclockwise from the over pass.
Faces are the orbits of ``d -> sigma[d ^ 1]``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..core.errors import NonRealizableError, WordValidationError
from .gauss import BasedDecoratedWord, Code, order_of, relabel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Face:
    """A face as the cyclic list of (arc, sense) it is bounded by.

    ``sense`` is +1 when the face boundary runs along the curve orientation.
    ``chords`` lists the crossing met at the start of each boundary dart.
    """

    arcs: Tuple[Tuple[int, int], ...]
    chords: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.arcs)

    @property
    def coherent(self) -> bool:
        return len({sense for _, sense in self.arcs}) == 1

    @property
    def distinct_chords(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.chords)))


@dataclass(frozen=True)
class CombinatorialMap:
    n: int
    sigma: Tuple[int, ...]
    orbits: Tuple[Tuple[int, ...], ...]

    @property
    def vertices(self) -> int:
        return self.n

    @property
    def edges(self) -> int:
        return 2 * self.n

    @property
    def face_count(self) -> int:
        return len(self.orbits)

    @property
    def euler_characteristic(self) -> int:
        if self.n == 0:
            return 2
        return self.vertices - self.edges + self.face_count

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2


@dataclass(frozen=True)
class BalanceReport:
    """Per chord: (arrows crossing it left-to-right, right-to-left)."""

    entries: Dict[int, Tuple[int, int]]

    @property
    def balanced(self) -> bool:
        return all(lr == rl for lr, rl in self.entries.values())


def _rotation(code: Code) -> List[int]:
    size = 2 * len(code)
    sigma = [0] * size
    if not code:
        return sigma
    length = len(code)
    heads: Dict[int, int] = {}
    tails: Dict[int, int] = {}
    for i, t in enumerate(code):
        (heads if t > 0 else tails)[abs(t)] = i
    for c, h in heads.items():
        t = tails[c]
        ring = (2 * t, 2 * h, 2 * ((t - 1) % length) + 1, 2 * ((h - 1) % length) + 1)
        for a, b in zip(ring, ring[1:] + ring[:1]):
            sigma[a] = b
    return sigma


def _orbits(sigma: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(sigma)
    orbits = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = sigma[d ^ 1]
        orbits.append(tuple(orbit))
    return orbits


def genus_of_code(code: Code) -> int:
    """Genus straight from a signed code; the hot path of enumeration."""
    if not code:
        return 0
    faces = len(_orbits(_rotation(code)))
    n = len(code) // 2
    return (2 + n - faces) // 2


def build_map(w: BasedDecoratedWord) -> CombinatorialMap:
    sigma = _rotation(w.code)
    return CombinatorialMap(w.n, tuple(sigma), tuple(_orbits(sigma)))


def genus(w: BasedDecoratedWord) -> int:
    return genus_of_code(w.code)


def realizable(w: BasedDecoratedWord) -> bool:
    return genus_of_code(w.code) == 0


def require_realizable(w: BasedDecoratedWord) -> None:
    g = genus_of_code(w.code)
    if g:
        raise NonRealizableError(f"word {w} has genus {g}", {"word": list(w.code), "genus": g})


def trace_faces(w: BasedDecoratedWord) -> List[Face]:
    code = w.code
    length = len(code)
    out = []
    for orbit in build_map(w).orbits:
        arcs = []
        chords = []
        for d in orbit:
            arc, side = d >> 1, d & 1
            arcs.append((arc, -1 if side else 1))
            chords.append(abs(code[(arc + side) % length]))
        out.append(Face(tuple(arcs), tuple(chords)))
    return out


def faces(w: BasedDecoratedWord) -> List[Face]:
    """Faces of a realizable word (empty for the simple closed curve)."""
    require_realizable(w)
    return trace_faces(w)


def balance(w: BasedDecoratedWord) -> BalanceReport:
    """Count arrows crossing each arrow X (oriented tail -> head) in each sense.

    Y crosses X left-to-right iff Y's tail lies on the arc running forward from
    tail(X) to head(X) and Y's head does not.
    """
    code = w.code
    length = len(code)
    entries: Dict[int, Tuple[int, int]] = {}
    for chord, (h, t) in w.positions().items():
        seen: Dict[int, int] = {}
        p = (t + 1) % length
        while p != h:
            seen[code[p]] = seen.get(code[p], 0) + 1
            p = (p + 1) % length
        lr = rl = 0
        for token in seen:
            if -token in seen:
                continue
            if token < 0:
                lr += 1
            else:
                rl += 1
        entries[chord] = (lr, rl)
    return BalanceReport(entries)


def gauss_parity(gauss: Sequence[int]) -> bool:
    """Every chord interlaced with an even number of chords."""
    first: Dict[int, int] = {}
    for i, c in enumerate(gauss):
        if c in first:
            between = gauss[first[c] + 1:i]
            odd = sum(1 for x in set(between) if between.count(x) == 1)
            if odd % 2:
                return False
        else:
            first[c] = i
    return True


def decorations(gauss: Sequence[int]) -> List[BasedDecoratedWord]:
    """All genus-0 decorations of an undecorated Gauss sequence."""
    gauss = tuple(abs(int(c)) for c in gauss)
    counts: Dict[int, int] = {}
    for c in gauss:
        counts[c] = counts.get(c, 0) + 1
    bad = [c for c, k in counts.items() if k != 2]
    if bad:
        raise WordValidationError(f"chords {bad} do not appear exactly twice", {"chords": bad})
    if not gauss:
        return [BasedDecoratedWord(())]
    if not gauss_parity(gauss):
        return []
    chords = sorted(counts)
    first = {c: gauss.index(c) for c in chords}
    found = {}
    for roles in itertools.product((1, -1), repeat=len(chords)):
        sign = dict(zip(chords, roles))
        code = tuple(
            c * sign[c] if i == first[c] else -c * sign[c] for i, c in enumerate(gauss)
        )
        if genus_of_code(code) == 0:
            code = relabel(code)
            found[code] = BasedDecoratedWord(code, check=False)
    logger.debug("gauss %s: %d genus-0 decorations", gauss, len(found))
    return [found[k] for k in sorted(found, key=order_of)]


def decorate(gauss: Sequence[int]) -> BasedDecoratedWord:
    """The least (based order) genus-0 decoration."""
    options = decorations(gauss)
    if not options:
        raise NonRealizableError(
            "no decoration of this Gauss sequence is realizable", {"gauss": list(gauss)}
        )
    return options[0]
