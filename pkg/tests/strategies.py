"""Hypothesis strategies for decorated words."""
from hypothesis import strategies as st

from spherecurves.services.gauss import BasedDecoratedWord


@st.composite
def words(draw, max_n: int = 6) -> BasedDecoratedWord:
    """Arbitrary valid words, realizable or not."""
    n = draw(st.integers(0, max_n))
    seq = draw(st.permutations([c for c in range(1, n + 1) for _ in range(2)]))
    head_first = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    seen = set()
    code = []
    for c in seq:
        first = c not in seen
        seen.add(c)
        code.append(c if head_first[c - 1] == first else -c)
    return BasedDecoratedWord(code)


@st.composite
def chord_subsets(draw, w: BasedDecoratedWord):
    chords = w.chords()
    return draw(st.lists(st.sampled_from(chords), unique=True)) if chords else []
