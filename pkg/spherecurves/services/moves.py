"""Reidemeister moves on decorated words.

Add-moves insert token pieces into gaps of the word (gap ``g`` sits before
position ``g``; gap ``2n`` is the end of the word). Deletions and RIII are found
from the face structure: 1-gons, 2-gons and triangles.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from ..core.config import settings
from ..core.errors import StaleMoveError
from ..schemas import InvariantVector
from .embedding import genus_of_code, require_realizable, trace_faces
from .gauss import BasedDecoratedWord, Code, normalize, relabel
from .invariants import invariant_vector, pattern_counts

logger = logging.getLogger(__name__)


class MoveKind(str, Enum):
    R1_ADD = "R1_add"
    R1_DEL = "R1_del"
    S2_ADD = "S2_add"
    S2_DEL = "S2_del"
    W2_ADD = "W2_add"
    W2_DEL = "W2_del"
    S3 = "S3"
    W3 = "W3"

    @property
    def adds_crossings(self) -> bool:
        return self.value.endswith("_add")

    @property
    def family(self) -> str:
        return self.value.split("_")[0]


ALL_KINDS: Tuple[MoveKind, ...] = tuple(MoveKind)

_FIXED_LABELS = {
    MoveKind.R1_ADD: "1a",
    MoveKind.R1_DEL: "1b",
    MoveKind.S2_ADD: "s2a",
    MoveKind.S2_DEL: "s2b",
    MoveKind.W2_ADD: "w2a",
    MoveKind.W2_DEL: "w2b",
}


@dataclass(frozen=True)
class MoveInstance:
    """One application site of a move on ``source`` with its (relabeled) result."""

    kind: MoveKind
    site: Tuple[int, ...]
    source: BasedDecoratedWord
    result: BasedDecoratedWord
    dx: int = 0

    @property
    def label(self) -> str:
        if self.kind in _FIXED_LABELS:
            return _FIXED_LABELS[self.kind]
        suffix = "a" if self.dx > 0 else "b"
        return f"{self.kind.value.lower()}{suffix}"


def parse_kinds(names: Iterable[str]) -> List[MoveKind]:
    """Accept kind values, family names (R1, S2, W2 expand to add and delete) or ``all``."""
    kinds: List[MoveKind] = []
    for name in names:
        name = name.strip()
        if not name:
            continue
        if name.lower() == "all":
            expanded = list(ALL_KINDS)
        else:
            expanded = [k for k in ALL_KINDS if k.value == name or k.family == name.upper()]
        if not expanded:
            raise ValueError(f"unknown move kind {name!r}")
        kinds.extend(k for k in expanded if k not in kinds)
    return kinds


def _fresh(code: Code) -> int:
    return max((abs(t) for t in code), default=0) + 1


def _splice(code: Code, a: int, first: Code, b: int, second: Code) -> Code:
    return code[:a] + first + code[a:b] + second + code[b:]


def _dx(source: Code, result: Code) -> int:
    before = pattern_counts(BasedDecoratedWord(source, check=False))
    after = pattern_counts(BasedDecoratedWord(result, check=False))
    return sum(after.values()) - sum(before.values())


def _bounds_bigon(code: Code, chords: Tuple[int, int], coherent: bool) -> bool:
    target = tuple(sorted(chords))
    for face in trace_faces(BasedDecoratedWord(code, check=False)):
        if face.degree == 2 and face.distinct_chords == target and face.coherent == coherent:
            return True
    return False


def _r1_add(w: BasedDecoratedWord) -> List[MoveInstance]:
    code = w.code
    j = _fresh(code)
    out = []
    for gap in range(len(code) + 1):
        for variant, piece in enumerate(((j, -j), (-j, j))):
            new = code[:gap] + piece + code[gap:]
            if genus_of_code(new) == 0:
                out.append(MoveInstance(MoveKind.R1_ADD, (gap, variant), w, _word(new)))
    return out


def _r1_del(w: BasedDecoratedWord) -> List[MoveInstance]:
    code = w.code
    length = len(code)
    out = []
    for i in range(length):
        nxt = (i + 1) % length
        if code[i] == -code[nxt]:
            chord = abs(code[i])
            new = tuple(t for t in code if abs(t) != chord)
            out.append(MoveInstance(MoveKind.R1_DEL, (chord,), w, _word(new)))
    return out


def _rii_add(w: BasedDecoratedWord, kind: MoveKind) -> List[MoveInstance]:
    code = w.code
    j = _fresh(code)
    k = j + 1
    if kind is MoveKind.S2_ADD:
        variants = (((j, -k), (k, -j)), ((-j, k), (-k, j)))
        coherent = True
    else:
        variants = (((-j, k), (j, -k)), ((j, -k), (-j, k)))
        coherent = False
    out = []
    size = len(code)
    for a in range(size + 1):
        for b in range(a, size + 1):
            for variant, (first, second) in enumerate(variants):
                new = _splice(code, a, first, b, second)
                if genus_of_code(new) or not _bounds_bigon(new, (j, k), coherent):
                    continue
                out.append(
                    MoveInstance(kind, (a, b, variant), w, _word(new), _dx(code, new))
                )
    return out


def _rii_del(w: BasedDecoratedWord, kind: MoveKind) -> List[MoveInstance]:
    code = w.code
    want_coherent = kind is MoveKind.S2_DEL
    out = []
    for face in trace_faces(w):
        chords = face.distinct_chords
        if face.degree != 2 or len(chords) != 2 or face.coherent != want_coherent:
            continue
        new = tuple(t for t in code if abs(t) not in chords)
        if genus_of_code(new):
            continue
        out.append(MoveInstance(kind, chords, w, _word(new), _dx(code, new)))
    return out


def triangle_kind(coherent: bool) -> MoveKind:
    strong_coherent = settings.STRONG_RIII_TRIANGLE == "coherent"
    return MoveKind.S3 if coherent == strong_coherent else MoveKind.W3


def _riii(w: BasedDecoratedWord, kind: MoveKind) -> List[MoveInstance]:
    code = w.code
    length = len(code)
    out = []
    for face in trace_faces(w):
        if face.degree != 3 or len(face.distinct_chords) != 3:
            continue
        if triangle_kind(face.coherent) is not kind:
            continue
        new = list(code)
        for arc, _ in face.arcs:
            p, q = arc, (arc + 1) % length
            new[p], new[q] = new[q], new[p]
        new = tuple(new)
        if genus_of_code(new):
            continue
        site = tuple(sorted(arc for arc, _ in face.arcs))
        out.append(MoveInstance(kind, site, w, _word(new), _dx(code, new)))
    return out


def _word(code: Code) -> BasedDecoratedWord:
    return BasedDecoratedWord(relabel(code), check=False)


def enumerate_moves(w: BasedDecoratedWord, kind: MoveKind) -> List[MoveInstance]:
    """All applications of ``kind`` to ``w`` whose result is realizable.

    Instances with the same based result are reported once.
    """
    require_realizable(w)
    kind = MoveKind(kind)
    if kind is MoveKind.R1_ADD:
        found = _r1_add(w)
    elif kind is MoveKind.R1_DEL:
        found = _r1_del(w)
    elif kind in (MoveKind.S2_ADD, MoveKind.W2_ADD):
        found = _rii_add(w, kind)
    elif kind in (MoveKind.S2_DEL, MoveKind.W2_DEL):
        found = _rii_del(w, kind)
    else:
        found = _riii(w, kind)
    unique: Dict[Code, MoveInstance] = {}
    for m in found:
        unique.setdefault(m.result.code, m)
    logger.debug("%s on %s: %d sites, %d distinct", kind.value, w, len(found), len(unique))
    return list(unique.values())


def all_moves(w: BasedDecoratedWord, kinds: Iterable[MoveKind] = ALL_KINDS) -> List[MoveInstance]:
    out: List[MoveInstance] = []
    for kind in kinds:
        out.extend(enumerate_moves(w, kind))
    return out


def neighbours(
    w: BasedDecoratedWord, kinds: Iterable[MoveKind] = ALL_KINDS, max_n: Optional[int] = None
) -> List[MoveInstance]:
    """Moves of the given kinds whose result stays within ``max_n`` crossings."""
    limit = settings.MOVE_MAX_CROSSINGS if max_n is None else max_n
    out = []
    for kind in kinds:
        kind = MoveKind(kind)
        step = 1 if kind is MoveKind.R1_ADD else 2
        if kind.adds_crossings and w.n + step > limit:
            continue
        out.extend(enumerate_moves(w, kind))
    return out


def apply(w: BasedDecoratedWord, m: MoveInstance) -> BasedDecoratedWord:
    if m.source != w:
        raise StaleMoveError(
            f"move {m.label}@{list(m.site)} was generated for {m.source}, not {w}",
            {"source": list(m.source.code), "word": list(w.code)},
        )
    return normalize(m.result)


_DELTA_FIELDS = [f for f in InvariantVector.model_fields if f != "realizable"]


def move_delta(w: BasedDecoratedWord, m: MoveInstance) -> Dict[str, int]:
    """Field-by-field invariant difference result - source."""
    after = apply(w, m)
    before_v = invariant_vector(w).model_dump()
    after_v = invariant_vector(after).model_dump()
    return {f: after_v[f] - before_v[f] for f in _DELTA_FIELDS}
