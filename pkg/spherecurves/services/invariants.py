"""Counting invariants of based arrow diagrams.

The four interlaced two-arrow patterns U, B, L, R are told apart by the roles of
the first occurrences of the two chords (earlier chord first):
(head, tail) = U, (tail, head) = B, (tail, tail) = L, (head, head) = R.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple, Union

import pandas as pd

from ..core.config import settings
from ..schemas import InvariantVector
from .embedding import realizable, require_realizable
from .gauss import BasedDecoratedWord, canonicalize, parse, reverse_orientation, rotate_base, subword

logger = logging.getLogger(__name__)

U = parse("1 -2 -1 2")
B = parse("-1 2 1 -2")
L = parse("-1 -2 1 2")
R = parse("1 2 -1 -2")

PATTERNS: Dict[str, BasedDecoratedWord] = {"u": U, "b": B, "l": L, "r": R}

_PAIR_CLASS = {(True, False): "u", (False, True): "b", (False, False): "l", (True, True): "r"}


def count_pattern(w: BasedDecoratedWord, pattern: BasedDecoratedWord) -> int:
    """Number of chord subsets of ``w`` whose sub-diagram is isomorphic to ``pattern``."""
    k = pattern.n
    chords = w.chords()
    if k > len(chords):
        return 0
    if k == 0:
        return 1
    target = canonicalize(pattern)
    return sum(
        1 for subset in itertools.combinations(chords, k) if canonicalize(subword(w, subset)) == target
    )


def pattern_counts(w: BasedDecoratedWord) -> Dict[str, int]:
    """u, b, l, r in one pass over interlaced pairs."""
    counts = {"u": 0, "b": 0, "l": 0, "r": 0}
    code = w.code
    partner = w.partner()
    for i, j in itertools.combinations(range(len(code)), 2):
        pi, pj = partner[i], partner[j]
        # i and j must be first occurrences of distinct chords
        if pi < i or pj < j or pi == j:
            continue
        if i < j < pi < pj:
            counts[_PAIR_CLASS[(code[i] > 0, code[j] > 0)]] += 1
    return counts


def seifert_count(w: BasedDecoratedWord) -> int:
    """Circles of the oriented smoothing: arc A_{j-1} continues as A_{p(j)}."""
    length = len(w)
    if not length:
        return 1
    partner = w.partner()
    seen = [False] * length
    cycles = 0
    for start in range(length):
        if seen[start]:
            continue
        cycles += 1
        a = start
        while not seen[a]:
            seen[a] = True
            a = partner[(a + 1) % length]
    return cycles


def invariant_vector(w: BasedDecoratedWord) -> InvariantVector:
    c = pattern_counts(w)
    lr = c["l"] + c["r"]
    x = c["u"] + c["b"] + lr
    s = seifert_count(w)
    inv_s2 = c["u"] - lr + c["b"]
    kappa = s - w.n
    return InvariantVector(
        n=w.n,
        u=c["u"],
        b=c["b"],
        l=c["l"],
        r=c["r"],
        lr=lr,
        x=x,
        s=s,
        kappa=kappa,
        inv_s3=lr - c["b"],
        inv_s2=inv_s2,
        inv_w3=c["u"],
        mu=2 * inv_s2 + kappa,
        x_mod3=x % 3,
        x_mod4=x % 4,
        realizable=realizable(w),
    )


def arnold_alias(w: BasedDecoratedWord) -> int:
    """J+/2 + St of the curve, which equals u - l - r + b."""
    require_realizable(w)
    return invariant_vector(w).inv_s2


def _ub_lr(w: BasedDecoratedWord) -> Tuple[int, int, int]:
    c = pattern_counts(w)
    return c["u"], c["b"], c["l"] + c["r"]


def verify_base_orientation_independence(w: BasedDecoratedWord, enforce: bool = True) -> bool:
    """u, b and l + r agree over every base rotation and the reversed orientation."""
    if enforce:
        require_realizable(w)
    reference = _ub_lr(w)
    images = [rotate_base(w, k) for k in range(1, len(w))]
    images.append(reverse_orientation(w))
    for image in images:
        if _ub_lr(image) != reference:
            logger.debug("%s: %s differs from %s", w, image, reference)
            return False
    return True


_PRESERVED: Dict[str, FrozenSet[str]] = {
    "R1": frozenset(
        {"u", "b", "l", "r", "lr", "x", "inv_s3", "inv_s2", "inv_w3", "kappa", "mu", "x_mod3", "x_mod4"}
    ),
    "S2": frozenset({"inv_s2", "x_mod4"}),
    "W2": frozenset({"mu", "s"}),
    "S3": frozenset({"inv_s3", "x_mod3"}),
    "W3": frozenset({"u", "b", "inv_w3", "s", "kappa"}),
}


def move_family(kind: str) -> str:
    """R1_add -> R1, S3 -> S3."""
    return str(getattr(kind, "value", kind)).split("_")[0]


def preserved_invariants(kinds: Iterable[str]) -> List[str]:
    """Invariants unchanged by every move of every listed kind."""
    families = {move_family(k) for k in kinds}
    unknown = families - set(_PRESERVED)
    if unknown:
        raise ValueError(f"unknown move kinds {sorted(unknown)}")
    if not families:
        return sorted(InvariantVector.model_fields)
    return sorted(frozenset.intersection(*(_PRESERVED[f] for f in families)))


WordSource = Union[Mapping[str, BasedDecoratedWord], Iterable[Tuple[str, BasedDecoratedWord]]]


def invariant_table(words: WordSource, columns: List[str] = None) -> pd.DataFrame:
    """One row per named word, in the fixed CSV column order."""
    columns = columns or settings.CSV_COLUMNS
    items = words.items() if isinstance(words, Mapping) else words
    rows = []
    for name, w in items:
        row = invariant_vector(w).model_dump()
        row["name"] = name
        rows.append(row)
    unknown = set(columns) - set(InvariantVector.model_fields) - {"name"}
    if unknown:
        raise ValueError(f"unknown columns {sorted(unknown)}")
    return pd.DataFrame(rows, columns=columns)
