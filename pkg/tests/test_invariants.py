import itertools

import pytest
from hypothesis import given, strategies as st

from spherecurves.core.config import settings
from spherecurves.core.errors import NonRealizableError
from spherecurves.services.corpus import random_connected_sums
from spherecurves.services.embedding import decorate
from spherecurves.services.gauss import (
    EMPTY,
    connected_sum,
    gauss_from_dt,
    interlaced,
    mirror,
    parse,
    reverse_orientation,
    rotate_base,
)
from spherecurves.services.invariants import (
    B,
    L,
    PATTERNS,
    R,
    U,
    arnold_alias,
    count_pattern,
    invariant_table,
    invariant_vector,
    pattern_counts,
    preserved_invariants,
    seifert_count,
    verify_base_orientation_independence,
)
from strategies import words


def test_pattern_constants():
    assert reverse_orientation(U) == U
    assert reverse_orientation(B) == B
    assert reverse_orientation(L) == R
    assert {rotate_base(U, k) for k in range(4)} == {U, B, L, R}


def test_count_pattern_trefoil(trefoil):
    assert count_pattern(trefoil, U) == 1
    assert count_pattern(trefoil, B) == 1
    assert count_pattern(trefoil, L) + count_pattern(trefoil, R) == 1


def test_count_pattern_small():
    assert count_pattern(EMPTY, U) == 0
    w = parse("1 -2 -1 2")
    assert [count_pattern(w, p) for p in (U, B, L, R)] == [1, 0, 0, 0]


def test_count_pattern_general_patterns(trefoil):
    assert count_pattern(trefoil, trefoil) == 1
    assert count_pattern(trefoil, parse("1 -1")) == 2
    assert count_pattern(trefoil, parse("-1 1")) == 1
    assert count_pattern(trefoil, EMPTY) == 1
    assert count_pattern(parse("1 -1"), trefoil) == 0


@pytest.mark.parametrize(
    "text, expected", [("", 1), ("1 -1", 2), ("1 -2 2 -1", 3), ("1 -2 3 -1 2 -3", 2)]
)
def test_seifert_count(text, expected):
    assert seifert_count(parse(text)) == expected


def test_trefoil_vector(trefoil):
    v = invariant_vector(trefoil)
    assert (v.n, v.u, v.b, v.lr, v.x, v.s) == (3, 1, 1, 1, 3, 2)
    assert (v.kappa, v.inv_s3, v.inv_s2, v.inv_w3, v.mu) == (-1, 0, 1, 1, 1)
    assert v.realizable


def test_figure_eight_vector(figure_eight):
    v = invariant_vector(figure_eight)
    assert (v.u, v.b, v.lr) == (1, 1, 2)
    assert (v.inv_s3, v.inv_s2, v.inv_w3) == (1, 0, 1)
    assert (v.s, v.kappa, v.mu) == (3, -1, -1)


def test_circle_vector():
    v = invariant_vector(EMPTY)
    assert (v.u, v.b, v.lr, v.x) == (0, 0, 0, 0)
    assert (v.s, v.kappa, v.mu) == (1, 1, 1)


def test_public_export_hides_l_and_r(trefoil):
    row = invariant_vector(trefoil).public()
    assert "l" not in row and "r" not in row
    assert row["lr"] == 1


def test_arnold_alias(trefoil, figure_eight):
    assert arnold_alias(trefoil) == 1
    assert arnold_alias(figure_eight) == 0
    with pytest.raises(NonRealizableError):
        arnold_alias(parse("1 -2 -1 2"))


def test_six_crossing_twist_projection():
    # the six-crossing twist knot shadow carries (inv_s2, inv_s3) = (0, 2)
    v = invariant_vector(decorate(gauss_from_dt([4, 8, 12, 10, 2, 6])))
    assert (v.u, v.b, v.lr) == (2, 2, 4)
    assert (v.inv_s2, v.inv_s3) == (0, 2)


def test_rolfsen_6_2_projection_has_odd_inv_s2():
    v = invariant_vector(decorate(gauss_from_dt([4, 8, 10, 12, 2, 6])))
    assert v.x == 11
    assert v.inv_s2 % 2 == 1


def test_base_orientation_independence(trefoil):
    assert verify_base_orientation_independence(trefoil)
    w = parse("1 -2 -1 2")
    assert not verify_base_orientation_independence(w, enforce=False)
    with pytest.raises(NonRealizableError):
        verify_base_orientation_independence(w)


def test_preserved_invariants():
    assert preserved_invariants(["R1_add", "R1_del", "W3"]) == ["b", "inv_w3", "kappa", "u"]
    assert preserved_invariants(["R1", "S2_add", "S2_del"]) == ["inv_s2", "x_mod4"]
    assert preserved_invariants(["S3"]) == ["inv_s3", "x_mod3"]
    with pytest.raises(ValueError):
        preserved_invariants(["R4"])


def test_invariant_table(trefoil, figure_eight):
    df = invariant_table({"3_1": trefoil, "4_1": figure_eight})
    assert list(df.columns) == settings.CSV_COLUMNS
    assert df.loc[0, "name"] == "3_1"
    assert df.loc[1, "inv_s3"] == 1
    with pytest.raises(ValueError):
        invariant_table({"3_1": trefoil}, ["name", "nope"])


@given(words())
def test_fast_counts_match_generic(w):
    fast = pattern_counts(w)
    assert fast == {name: count_pattern(w, p) for name, p in PATTERNS.items()}


@given(words())
def test_x_counts_interlaced_pairs(w):
    pairs = sum(1 for i, j in itertools.combinations(w.chords(), 2) if interlaced(w, i, j))
    assert invariant_vector(w).x == pairs


@given(words())
def test_reversal_swaps_l_and_r(w):
    before, after = pattern_counts(w), pattern_counts(reverse_orientation(w))
    assert (after["u"], after["b"]) == (before["u"], before["b"])
    assert (after["l"], after["r"]) == (before["r"], before["l"])


@given(words())
def test_mirror_swaps_u_b_and_l_r(w):
    before, after = pattern_counts(w), pattern_counts(mirror(w))
    assert (after["u"], after["b"], after["l"], after["r"]) == (
        before["b"], before["u"], before["r"], before["l"]
    )


@given(words(), st.integers(0, 20))
def test_seifert_ignores_base_and_roles(w, k):
    s = seifert_count(w)
    assert seifert_count(rotate_base(w, k)) == s
    assert seifert_count(mirror(w)) == s


def test_realizable_corpus_relations(corpus5):
    for w in corpus5:
        v = invariant_vector(w)
        assert v.u == v.b, w
        assert v.mu == 2 * v.inv_s2 + v.kappa
        assert verify_base_orientation_independence(w), w
        if v.inv_s2 == 0:
            assert v.x == 4 * v.u, w


@pytest.mark.slow
def test_realizable_corpus_relations_n6(corpus6):
    for w in corpus6:
        v = invariant_vector(w)
        assert v.u == v.b, w
        assert verify_base_orientation_independence(w), w


def test_additivity_on_random_sums(classes5):
    for w1, w2, arc1, arc2, s in random_connected_sums(classes5, count=200, max_total=8, seed=7):
        v1, v2, vs = invariant_vector(w1), invariant_vector(w2), invariant_vector(s)
        assert vs.u == v1.u + v2.u
        assert vs.b == v1.b + v2.b
        assert vs.lr == v1.lr + v2.lr
        if arc2 == 0:
            assert (vs.l, vs.r) == (v1.l + v2.l, v1.r + v2.r)
        assert vs.kappa == v1.kappa + v2.kappa - 1
        assert vs.mu == v1.mu + v2.mu - 1


def test_additivity_at_base_point(trefoil, figure_eight):
    s = connected_sum(trefoil, figure_eight, 2, 0)
    for name, pattern in PATTERNS.items():
        assert count_pattern(s, pattern) == count_pattern(trefoil, pattern) + count_pattern(
            figure_eight, pattern
        ), name
