"""Exhaustive enumeration of spherical curves, naming and invariant tables.

Two independent strategies produce the class set up to a crossing bound:

* ``dfs``: every undecorated Gauss sequence (labels in first-occurrence order)
  is decorated by genus-0 search;
* ``closure``: the move closure of the simple closed curve.

The DFS does not prune prefixes that cannot start a canonical sequence. It
decorates every sequence and deduplicates the results by key afterwards.

Classes are keyed by the unbased-unoriented canonical key. By default
(``identify_mirrors``) a class and its sphere reflection share one entry.

``move_lines`` lists, per move family, the pairs of prime reduced classes one
move apart once 1-gons are ignored.
"""
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..core.config import settings
from ..schemas import CorpusFile, CurveClass, MoveLine
from .embedding import decorate, decorations, gauss_parity
from .gauss import (
    EMPTY,
    BasedDecoratedWord,
    CanonicalKey,
    KeyMode,
    connected_sum,
    gauss_from_dt,
    mirror,
    unoriented_key,
)
from .invariants import invariant_table, invariant_vector
from .moves import ALL_KINDS, MoveKind, enumerate_moves, neighbours
from .search import separation_certificate

logger = logging.getLogger(__name__)

TRIVIAL_NAME = "◯"
FLYPE_LABELS = {"7_6": "7_A", "7_7": "7_B", "7_5": "7_C"}
LINE_MOVES: Dict[str, Tuple[MoveKind, ...]] = {
    "W3": (MoveKind.W3,),
    "S3": (MoveKind.S3,),
    "W2": (MoveKind.W2_ADD, MoveKind.W2_DEL),
    "S2": (MoveKind.S2_ADD, MoveKind.S2_DEL),
}
_R1_KINDS = (MoveKind.R1_ADD, MoveKind.R1_DEL)
_DISTANCE_FIELDS = ("u", "b", "lr", "x", "s", "kappa", "inv_s3", "inv_s2", "inv_w3", "mu")
_PROJECTION_LINE = re.compile(r"^\s*([\w*]+)\s*:\s*([\d\s-]+)$")


# -- structural filters ---------------------------------------------------

def _split_points(seq) -> bool:
    """Whether some nonempty proper interval is closed under the chord pairing."""
    length = len(seq)
    for i in range(length):
        open_chords = set()
        for j in range(i, length - 1 if i == 0 else length):
            c = abs(seq[j])
            if c in open_chords:
                open_chords.discard(c)
            else:
                open_chords.add(c)
            if not open_chords:
                return True
    return False


def is_prime(w: BasedDecoratedWord) -> bool:
    """False for the simple closed curve and for every connected sum."""
    if not w.n:
        return False
    return not _split_points(w.code)


def _has_kink(seq) -> bool:
    length = len(seq)
    return any(abs(seq[i]) == abs(seq[(i + 1) % length]) for i in range(length))


def is_reduced(w: BasedDecoratedWord) -> bool:
    """No 1-gon: no chord has cyclically adjacent endpoints."""
    return not _has_kink(w.code) if w.n else True


def class_key(w: BasedDecoratedWord, identify_mirrors: bool = True) -> CanonicalKey:
    key = unoriented_key(w)
    if identify_mirrors:
        key = min(key, unoriented_key(mirror(w)))
    return key


# -- strategy (a): decorated Gauss sequences --------------------------------

def _gauss_sequences(n: int, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
    """Sequences using labels 1..n twice each, labels first appearing in order."""
    counts: Dict[int, int] = {}
    for c in prefix:
        counts[c] = counts.get(c, 0) + 1
    opened = len(counts)

    def extend(seq: List[int], opened: int):
        if len(seq) == 2 * n:
            yield tuple(seq)
            return
        for c in range(1, opened + 1):
            if counts[c] == 1:
                counts[c] = 2
                seq.append(c)
                yield from extend(seq, opened)
                seq.pop()
                counts[c] = 1
        if opened < n:
            c = opened + 1
            counts[c] = 1
            seq.append(c)
            yield from extend(seq, opened + 1)
            seq.pop()
            del counts[c]

    yield from extend(list(prefix), opened)


def _prefixes(n: int, depth: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    depth = min(depth, 2 * n)
    out = []
    for seq in _gauss_sequences(n):
        p = seq[:depth]
        if not out or out[-1] != p:
            out.append(p)
    return out


def _classes_from_prefix(n: int, prefix, prime: bool, reduced: bool) -> Dict[Tuple, Tuple]:
    found: Dict[Tuple, Tuple] = {}
    for seq in _gauss_sequences(n, prefix):
        if reduced and _has_kink(seq):
            continue
        if prime and _split_points(seq):
            continue
        if not gauss_parity(seq):
            continue
        for w in decorations(seq):
            found.setdefault(unoriented_key(w).order, w.code)
    return found


def dfs_classes(
    max_n: int, prime: bool = False, reduced: bool = False, n_jobs: Optional[int] = None
) -> Dict[CanonicalKey, BasedDecoratedWord]:
    """Strategy (a). Parallel over Gauss-sequence prefixes for larger ``n``."""
    n_jobs = settings.N_JOBS if n_jobs is None else n_jobs
    classes: Dict[CanonicalKey, BasedDecoratedWord] = {unoriented_key(EMPTY): EMPTY}
    for n in range(1, max_n + 1):
        if n <= 4 or n_jobs == 1:
            parts = [_classes_from_prefix(n, (), prime, reduced)]
        else:
            prefixes = _prefixes(n, 4)
            parts = Parallel(n_jobs=n_jobs)(
                delayed(_classes_from_prefix)(n, p, prime, reduced) for p in prefixes
            )
        merged: Dict[Tuple, Tuple] = {}
        for part in parts:
            for order, code in part.items():
                merged.setdefault(order, code)
        for order in sorted(merged):
            key = CanonicalKey(order, KeyMode.UNBASED_UNORIENTED)
            classes[key] = key.word()
        logger.info("dfs: n=%d gives %d classes", n, len(merged))
    return classes


# -- strategy (b): move closure -------------------------------------------

def closure_classes(max_n: int, slack: int = 0) -> Dict[CanonicalKey, BasedDecoratedWord]:
    """Strategy (b): all classes reachable from the simple closed curve.

    Intermediate curves may use up to ``max_n + slack`` crossings.
    """
    bound = max_n + slack
    start = unoriented_key(EMPTY)
    seen: Dict[CanonicalKey, BasedDecoratedWord] = {start: EMPTY}
    frontier = [EMPTY]
    while frontier:
        next_frontier = []
        for w in frontier:
            for m in neighbours(w, ALL_KINDS, bound):
                key = unoriented_key(m.result)
                if key not in seen:
                    seen[key] = key.word()
                    next_frontier.append(seen[key])
        logger.debug("closure: %d classes, frontier %d", len(seen), len(next_frontier))
        frontier = next_frontier
    logger.info("closure: %d classes up to %d crossings", len(seen), bound)
    return {k: w for k, w in seen.items() if w.n <= max_n}


def cross_check(max_n: int, n_jobs: Optional[int] = None) -> Dict[str, List[List[int]]]:
    """Keys found by only one of the two strategies (both lists empty on agreement)."""
    dfs = set(dfs_classes(max_n, n_jobs=n_jobs))
    closure = set(closure_classes(max_n))
    if dfs != closure:
        logger.warning("strategies disagree: %d dfs-only, %d closure-only", len(dfs - closure), len(closure - dfs))
    return {
        "dfs_only": [list(k.code) for k in sorted(dfs - closure)],
        "closure_only": [list(k.code) for k in sorted(closure - dfs)],
    }


# -- naming ---------------------------------------------------------------

def load_projections(path: Optional[Path] = None) -> Dict[str, BasedDecoratedWord]:
    """Named projections from a DT-code file, each decorated for the sphere."""
    path = Path(path or settings.PROJECTIONS_FILE)
    out: Dict[str, BasedDecoratedWord] = {}
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        match = _PROJECTION_LINE.match(line)
        if not match:
            raise ValueError(f"{path}:{number}: cannot parse {line!r}")
        name, evens = match.group(1), [int(t) for t in match.group(2).split()]
        out[name] = decorate(gauss_from_dt(evens))
    logger.debug("loaded %d projections from %s", len(out), path)
    return out


def _distance(a: Dict[str, int], b: Dict[str, int]) -> int:
    return sum(abs(a[f] - b[f]) for f in _DISTANCE_FIELDS)


def name_classes(
    words: Iterable[BasedDecoratedWord], projections: Optional[Dict[str, BasedDecoratedWord]] = None
) -> List[str]:
    """Names for the given class representatives, in input order."""
    words = list(words)
    projections = load_projections() if projections is None else projections
    by_key: Dict[CanonicalKey, str] = {}
    for name, w in projections.items():
        by_key.setdefault(unoriented_key(w), name)
    for name, w in projections.items():
        by_key.setdefault(unoriented_key(mirror(w)), f"{name}*")

    names: List[Optional[str]] = []
    for w in words:
        names.append(TRIVIAL_NAME if not w.n else by_key.get(unoriented_key(w)))

    # flype additions: the unmatched prime reduced seven-crossing classes
    pool = [
        i for i, w in enumerate(words)
        if names[i] is None and w.n == 7 and is_prime(w) and is_reduced(w)
    ]
    vectors = {i: invariant_vector(words[i]).model_dump() for i in pool}
    mirror_keys = {i: class_key(words[i]) for i in pool}
    flype_keys: Dict[CanonicalKey, str] = {}
    for source, label in FLYPE_LABELS.items():
        if not pool or source not in projections:
            continue
        ref = invariant_vector(projections[source]).model_dump()
        best = min(pool, key=lambda i: (_distance(vectors[i], ref), unoriented_key(words[i])))
        names[best] = label
        flype_keys[mirror_keys[best]] = label
        pool = [i for i in pool if mirror_keys[i] != mirror_keys[best]]

    # the reflection of a flype class, when listed separately
    for i, w in enumerate(words):
        if names[i] is None and w.n == 7 and class_key(w) in flype_keys:
            names[i] = f"{flype_keys[class_key(w)]}*"

    counters: Dict[int, int] = {}
    for i, w in enumerate(words):
        if names[i] is None:
            counters[w.n] = counters.get(w.n, 0) + 1
            names[i] = f"n{w.n}#{counters[w.n]}"
    return names


# -- public enumeration -----------------------------------------------------

def enumerate_curves(
    max_n: Optional[int] = None,
    prime: bool = False,
    reduced: bool = False,
    strategy: str = "dfs",
    identify_mirrors: bool = True,
    n_jobs: Optional[int] = None,
    projections: Optional[Dict[str, BasedDecoratedWord]] = None,
) -> List[CurveClass]:
    """One CurveClass per class, ordered by (n, key). The simple closed curve is always listed.

    With ``identify_mirrors=False`` a chiral class and its reflection are listed
    separately; the reflection is named with a trailing ``*``.
    """
    max_n = settings.DEFAULT_MAX_CROSSINGS if max_n is None else max_n
    if strategy == "dfs":
        found = dfs_classes(max_n, prime, reduced, n_jobs)
    elif strategy == "closure":
        found = closure_classes(max_n)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    reps: Dict[CanonicalKey, BasedDecoratedWord] = {}
    for key in sorted(found, key=lambda k: (len(k.order), k.order)):
        w = found[key]
        if w.n and ((prime and not is_prime(w)) or (reduced and not is_reduced(w))):
            continue
        reps.setdefault(class_key(w, identify_mirrors), key.word())

    keys = sorted(reps, key=lambda k: (len(k.order), k.order))
    words = [reps[k] for k in keys]
    names = name_classes(words, projections)
    classes = [
        CurveClass(
            key=list(unoriented_key(w).code),
            n=w.n,
            name=name,
            prime=is_prime(w),
            reduced=is_reduced(w),
            trivial=not w.n,
            best_effort=w.n >= 7,
            invariants=invariant_vector(w),
        )
        for w, name in zip(words, names)
    ]
    logger.info("enumerated %d classes up to %d crossings (%s)", len(classes), max_n, strategy)
    return classes


def class_counts(classes: Iterable[CurveClass], nontrivial: bool = True) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for c in classes:
        if nontrivial and c.trivial:
            continue
        counts[c.n] = counts.get(c.n, 0) + 1
    return dict(sorted(counts.items()))


def table(
    classes: Iterable[CurveClass], columns: Optional[List[str]] = None
) -> pd.DataFrame:
    """Invariant table, one row per class in corpus order."""
    rows = [(c.name, BasedDecoratedWord(c.key, check=False)) for c in classes]
    return invariant_table(rows, columns)


def random_connected_sums(
    classes: List[CurveClass],
    count: int = 200,
    max_total: int = 8,
    seed: Optional[int] = None,
) -> List[Tuple[BasedDecoratedWord, BasedDecoratedWord, int, int, BasedDecoratedWord]]:
    """Random (w1, w2, arc1, arc2, sum) samples with n1 + n2 <= ``max_total``."""
    rng = np.random.default_rng(settings.RANDOM_SEED if seed is None else seed)
    words = [BasedDecoratedWord(c.key, check=False) for c in classes]
    sizes = np.array([w.n for w in words])
    out = []
    while len(out) < count:
        i = int(rng.integers(len(words)))
        partners = np.flatnonzero(sizes + sizes[i] <= max_total)
        if not len(partners):
            continue
        j = int(rng.choice(partners))
        w1, w2 = words[i], words[j]
        arc1 = int(rng.integers(len(w1) + 1))
        arc2 = int(rng.integers(len(w2))) if len(w2) else 0
        out.append((w1, w2, arc1, arc2, connected_sum(w1, w2, arc1, arc2)))
    return out


# -- move lines -------------------------------------------------------------

def strip_kinks(w: BasedDecoratedWord) -> BasedDecoratedWord:
    """Delete 1-gons until none is left."""
    while True:
        found = enumerate_moves(w, MoveKind.R1_DEL)
        if not found:
            return w
        w = found[0].result


def _with_kinks(w: BasedDecoratedWord, slack: int) -> List[BasedDecoratedWord]:
    """``w`` and every curve obtained from it by at most ``slack`` 1-gon additions."""
    seen = {unoriented_key(w): w}
    frontier = [w]
    for _ in range(slack):
        next_frontier = []
        for v in frontier:
            for m in enumerate_moves(v, MoveKind.R1_ADD):
                key = unoriented_key(m.result)
                if key not in seen:
                    seen[key] = m.result
                    next_frontier.append(m.result)
        frontier = next_frontier
    return list(seen.values())


def _lines_from(
    w: BasedDecoratedWord, families: Tuple[str, ...], slack: int, identify_mirrors: bool
) -> List[Tuple[str, CanonicalKey]]:
    out = []
    for v in _with_kinks(w, slack):
        for family in families:
            for kind in LINE_MOVES[family]:
                for m in enumerate_moves(v, kind):
                    out.append((family, class_key(strip_kinks(m.result), identify_mirrors)))
    return out


def move_lines(
    classes: Iterable[CurveClass],
    families: Iterable[str] = tuple(LINE_MOVES),
    slack: int = 1,
    identify_mirrors: bool = True,
    n_jobs: Optional[int] = None,
) -> List[MoveLine]:
    """Pairs of prime reduced classes joined by one move of a family plus 1-gon moves.

    A curve is first given up to ``slack`` extra 1-gons, one move of the family
    is applied, and the 1-gons of the result are deleted. Each pair carries the
    R1-invariant differences that separate its two classes.
    """
    families = tuple(f.upper() for f in families)
    unknown = [f for f in families if f not in LINE_MOVES]
    if unknown:
        raise ValueError(f"unknown move families {unknown}; choose from {list(LINE_MOVES)}")
    n_jobs = settings.N_JOBS if n_jobs is None else n_jobs

    pool: Dict[CanonicalKey, CurveClass] = {}
    for c in classes:
        if c.trivial or (c.prime and c.reduced):
            w = BasedDecoratedWord(c.key, check=False)
            pool.setdefault(class_key(w, identify_mirrors), c)
    keys = sorted(pool, key=lambda k: (len(k.order), k.order))
    words = [BasedDecoratedWord(pool[k].key, check=False) for k in keys]

    if n_jobs == 1 or len(words) < 8:
        found = [_lines_from(w, families, slack, identify_mirrors) for w in words]
    else:
        found = Parallel(n_jobs=n_jobs)(
            delayed(_lines_from)(w, families, slack, identify_mirrors) for w in words
        )

    rank = {k: i for i, k in enumerate(keys)}
    pairs = set()
    for source, hits in zip(keys, found):
        for family, target in hits:
            if target in pool and target != source:
                a, b = sorted((source, target), key=rank.get)
                pairs.add((families.index(family), rank[a], rank[b]))

    lines = []
    for f, i, j in sorted(pairs):
        a, b = pool[keys[i]], pool[keys[j]]
        certificate = separation_certificate(words[i], words[j], _R1_KINDS)
        lines.append(
            MoveLine(
                move=families[f],
                source=a.name,
                target=b.name,
                source_key=a.key,
                target_key=b.key,
                certificate={k: list(v) for k, v in certificate.items()},
            )
        )
    logger.info("move lines: %d pairs over %d classes (slack %d)", len(lines), len(keys), slack)
    return lines


def lines_table(lines: Iterable[MoveLine]) -> pd.DataFrame:
    rows = [
        {
            "move": line.move,
            "source": line.source,
            "target": line.target,
            "certificate": " ".join(f"{k}:{a}/{b}" for k, (a, b) in sorted(line.certificate.items())),
        }
        for line in lines
    ]
    return pd.DataFrame(rows, columns=["move", "source", "target", "certificate"])


# -- persistence ----------------------------------------------------------

def save_corpus(
    path: Path, classes: List[CurveClass], max_n: int, prime: bool, reduced: bool, strategy: str
) -> None:
    payload = CorpusFile(max_n=max_n, prime=prime, reduced=reduced, strategy=strategy, classes=classes)
    Path(path).write_text(payload.model_dump_json(indent=2), encoding="utf-8")
    logger.info("wrote %d classes to %s", len(classes), path)


def load_corpus(path: Path) -> CorpusFile:
    return CorpusFile.model_validate_json(Path(path).read_text(encoding="utf-8"))
