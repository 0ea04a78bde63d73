"""Bounded breadth-first search between curves under a chosen set of moves."""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from joblib import Parallel, delayed

from ..core.config import settings
from ..core.errors import SearchBoundExceeded
from ..schemas import MoveInstanceModel, SearchResult
from .embedding import require_realizable
from .gauss import BasedDecoratedWord, CanonicalKey, unoriented_key
from .invariants import invariant_vector, preserved_invariants
from .moves import MoveInstance, MoveKind, neighbours

logger = logging.getLogger(__name__)

FOUND = "found"
SEPARATED = "separated"
EXHAUSTED = "exhausted"
UNREACHABLE = "unreachable"

# smaller frontiers are expanded in-process
_PARALLEL_FRONTIER = 64


@dataclass
class SearchOutcome:
    status: str
    source: BasedDecoratedWord
    target: BasedDecoratedWord
    kinds: Tuple[MoveKind, ...]
    path: Optional[List[MoveInstance]] = None
    certificate: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    states: int = 0
    depth: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_model(self) -> SearchResult:
        path = None
        if self.path is not None:
            path = [
                MoveInstanceModel(
                    kind=m.kind.value, label=m.label, site=list(m.site), result=list(m.result.code)
                )
                for m in self.path
            ]
        return SearchResult(
            status=self.status,
            source=list(self.source.code),
            target=list(self.target.code),
            kinds=[k.value for k in self.kinds],
            path=path,
            certificate={k: list(v) for k, v in self.certificate.items()},
            states=self.states,
            depth=self.depth,
        )


def separation_certificate(
    w1: BasedDecoratedWord, w2: BasedDecoratedWord, kinds: Iterable[MoveKind]
) -> Dict[str, Tuple[int, int]]:
    """Invariants preserved by every move in ``kinds`` that still differ between the words."""
    v1 = invariant_vector(w1).model_dump()
    v2 = invariant_vector(w2).model_dump()
    return {name: (v1[name], v2[name]) for name in preserved_invariants(kinds) if v1[name] != v2[name]}


def _expand(w: BasedDecoratedWord, kinds, max_n: int) -> List[MoveInstance]:
    return neighbours(w, kinds, max_n)


def bfs_reachable(
    w1: BasedDecoratedWord,
    w2: BasedDecoratedWord,
    kinds: Iterable[MoveKind],
    max_n: Optional[int] = None,
    max_steps: Optional[int] = None,
    max_states: Optional[int] = None,
    n_jobs: int = 1,
    strict: bool = False,
) -> SearchOutcome:
    """Shortest move sequence turning ``w1`` into a curve of ``w2``'s class.

    Classes are compared by unbased-unoriented key, and every move in the
    returned path is generated from the previous move's result. A failed search
    is not a proof of non-equivalence; ``separated`` is.
    """
    kinds = tuple(MoveKind(k) for k in kinds)
    max_n = settings.MOVE_MAX_CROSSINGS if max_n is None else max_n
    max_steps = settings.BFS_MAX_STEPS if max_steps is None else max_steps
    max_states = settings.BFS_MAX_STATES if max_states is None else max_states
    require_realizable(w1)
    require_realizable(w2)

    outcome = SearchOutcome(UNREACHABLE, w1, w2, kinds)
    certificate = separation_certificate(w1, w2, kinds)
    if certificate:
        logger.info("separated by %s", sorted(certificate))
        outcome.status = SEPARATED
        outcome.certificate = certificate
        return outcome

    target = unoriented_key(w2)
    start = unoriented_key(w1)
    parents: Dict[CanonicalKey, Optional[Tuple[CanonicalKey, MoveInstance]]] = {start: None}
    frontier: List[Tuple[CanonicalKey, BasedDecoratedWord]] = [(start, w1)]

    def finish(status: str, depth: int, hit: Optional[CanonicalKey] = None) -> SearchOutcome:
        outcome.status = status
        outcome.states = len(parents)
        outcome.depth = depth
        if hit is not None:
            path: List[MoveInstance] = []
            node = parents[hit]
            while node is not None:
                key, move = node
                path.append(move)
                node = parents[key]
            outcome.path = path[::-1]
        if status == EXHAUSTED and strict:
            raise SearchBoundExceeded(
                f"search bounds hit after {len(parents)} states at depth {depth}",
                {"states": len(parents), "depth": depth},
            )
        return outcome

    if start == target:
        return finish(FOUND, 0, start)

    for depth in range(1, max_steps + 1):
        if not frontier:
            return finish(UNREACHABLE, depth - 1)
        if n_jobs != 1 and len(frontier) >= _PARALLEL_FRONTIER:
            expansions = Parallel(n_jobs=n_jobs)(
                delayed(_expand)(word, kinds, max_n) for _, word in frontier
            )
        else:
            expansions = [_expand(word, kinds, max_n) for _, word in frontier]
        next_frontier = []
        for (key, _), moves in zip(frontier, expansions):
            for m in moves:
                child = unoriented_key(m.result)
                if child in parents:
                    continue
                parents[child] = (key, m)
                if child == target:
                    logger.info("reached target at depth %d after %d states", depth, len(parents))
                    return finish(FOUND, depth, child)
                next_frontier.append((child, m.result))
                if len(parents) >= max_states:
                    logger.warning("state cap %d reached at depth %d", max_states, depth)
                    return finish(EXHAUSTED, depth)
        logger.debug("depth %d: frontier %d, states %d", depth, len(next_frontier), len(parents))
        frontier = next_frontier
    if frontier:
        return finish(EXHAUSTED, max_steps)
    return finish(UNREACHABLE, max_steps)
