from collections import Counter

import pytest
from hypothesis import given, strategies as st

from spherecurves.core.errors import WordSyntaxError, WordValidationError
from spherecurves.services.gauss import (
    EMPTY,
    KeyMode,
    Role,
    Token,
    BasedDecoratedWord,
    canonical_key,
    canonicalize,
    connected_sum,
    gauss_from_dt,
    interlaced,
    interlacement,
    mirror,
    normalize,
    parse,
    reverse_orientation,
    rotate_base,
    subword,
    to_json,
    to_text,
    unbased_key,
    unoriented_key,
)
from strategies import chord_subsets, words


def test_parse_empty_is_circle():
    w = parse("")
    assert w.n == 0
    assert w == EMPTY


def test_parse_trefoil(trefoil):
    assert trefoil.n == 3
    assert trefoil.code == (1, -2, 3, -1, 2, -3)


def test_parse_keeps_ids_verbatim():
    assert parse("7 -7").code == (7, -7)
    assert parse("7,-7").code == (7, -7)


@pytest.mark.parametrize(
    "text, error",
    [
        ("1 -2 -1 -2", WordValidationError),
        ("1 -1 2", WordValidationError),
        ("1 1", WordValidationError),
        ("1 0 -1", WordSyntaxError),
        ("1 x -1", WordSyntaxError),
    ],
)
def test_parse_rejects(text, error):
    with pytest.raises(error):
        parse(text)


def test_two_tails_error_detail():
    with pytest.raises(WordValidationError) as info:
        parse("1 -2 -1 -2")
    assert info.value.detail == {"chord": 2, "role": "tail"}
    assert info.value.to_dict()["error"] == "word_invalid"


def test_tokens(kink):
    assert kink.tokens == (Token(1, Role.HEAD), Token(1, Role.TAIL))
    assert BasedDecoratedWord.from_tokens(kink.tokens) == kink


def test_word_is_immutable(trefoil):
    with pytest.raises(AttributeError):
        trefoil.foo = 1


def test_positions_and_partner(trefoil):
    assert trefoil.positions() == {1: (0, 3), 2: (4, 1), 3: (2, 5)}
    assert trefoil.partner() == [3, 4, 5, 0, 1, 2]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3 -1 2 -3 1 -2", "1 -2 3 -1 2 -3"),
        ("1 -2 3 -1 2 -3", "1 -2 3 -1 2 -3"),
        ("-7 5 7 -5", "-1 2 1 -2"),
    ],
)
def test_canonicalize(text, expected):
    key = canonicalize(parse(text))
    assert str(key) == expected
    assert key.mode is KeyMode.BASED


def test_rotate_base():
    assert to_text(rotate_base(parse("1 -2 -1 2"), 1)) == "-1 -2 1 2"


def test_rotate_base_full_turn(trefoil):
    assert rotate_base(trefoil, 6) == trefoil
    assert rotate_base(EMPTY, 3) == EMPTY


@pytest.mark.parametrize(
    "text, expected",
    [("1 -2 -1 2", "1 -2 -1 2"), ("-1 -2 1 2", "1 2 -1 -2"), ("", "")],
)
def test_reverse_orientation(text, expected):
    assert to_text(reverse_orientation(parse(text))) == expected


def test_mirror_swaps_roles():
    assert to_text(mirror(parse("1 -2 -1 2"))) == "-1 2 1 -2"
    assert to_text(mirror(parse("-1 -2 1 2"))) == "1 2 -1 -2"


@pytest.mark.parametrize(
    "chords, expected", [({1, 2}, "1 -2 -1 2"), ({2, 3}, "-1 2 1 -2"), (set(), "")]
)
def test_subword(trefoil, chords, expected):
    assert to_text(subword(trefoil, chords)) == expected


def test_subword_unknown_id(trefoil):
    with pytest.raises(WordValidationError):
        subword(trefoil, {4})


def test_connected_sum_of_trefoils(trefoil):
    w = connected_sum(trefoil, trefoil, 0, 0)
    assert to_text(w) == "1 -2 3 -1 2 -3 4 -5 6 -4 5 -6"


def test_connected_sum_keeps_summand_roles(kink):
    assert to_text(connected_sum(kink, parse("-1 1"), 1, 0)) == "1 -2 2 -1"


def test_connected_sum_with_circle_is_identity(trefoil):
    for arc in range(len(trefoil) + 1):
        assert connected_sum(trefoil, EMPTY, arc, 0) == normalize(trefoil)


def test_connected_sum_rejects_bad_arc(trefoil, kink):
    with pytest.raises(WordValidationError):
        connected_sum(trefoil, kink, 7, 0)
    with pytest.raises(WordValidationError):
        connected_sum(trefoil, kink, 0, -1)


def test_key_modes(trefoil):
    rotated = rotate_base(trefoil, 1)
    assert canonicalize(rotated) != canonicalize(trefoil)
    assert unbased_key(rotated) == unbased_key(trefoil)
    assert unoriented_key(reverse_orientation(rotated)) == unoriented_key(trefoil)
    assert canonical_key(trefoil, "unbased") == unbased_key(trefoil)
    assert canonicalize(trefoil).word() == trefoil


def test_interlacement(trefoil):
    assert interlacement(trefoil) == {1: [2, 3], 2: [1, 3], 3: [1, 2]}
    assert interlacement(parse("1 -2 2 -1")) == {1: [], 2: []}
    assert interlaced(trefoil, 1, 2)
    assert not interlaced(parse("1 -2 2 -1"), 1, 2)


def test_gauss_from_dt():
    assert gauss_from_dt([4, 6, 2]) == (1, 2, 3, 1, 2, 3)
    assert gauss_from_dt([4, 6, 8, 2]) == (1, 2, 3, 1, 4, 3, 2, 4)
    with pytest.raises(WordValidationError):
        gauss_from_dt([4, 4, 2])


def test_text_and_json(trefoil):
    assert parse(to_text(trefoil)) == trefoil
    assert to_json(trefoil) == [1, -2, 3, -1, 2, -3]
    assert repr(trefoil) == "BasedDecoratedWord('1 -2 3 -1 2 -3')"


@given(words())
def test_canonicalize_idempotent(w):
    key = canonicalize(w)
    assert canonicalize(key.word()) == key


@given(words())
def test_full_rotation_is_normalization(w):
    assert rotate_base(w, len(w)) == normalize(w)


@given(words(), st.integers(-20, 20))
def test_rotation_preserves_unbased_key(w, k):
    assert unbased_key(rotate_base(w, k)) == unbased_key(w)


@given(words())
def test_reverse_is_involution(w):
    assert reverse_orientation(reverse_orientation(w)) == normalize(w)
    assert mirror(mirror(w)) == normalize(w)


@given(st.data())
def test_subword_is_valid(data):
    w = data.draw(words())
    chords = data.draw(chord_subsets(w))
    sub = subword(w, chords)
    assert sub.n == len(chords)
    BasedDecoratedWord(sub.code)


@given(words(max_n=4), words(max_n=4), st.data())
def test_connected_sum_single_chord_multiset(w1, w2, data):
    arc1 = data.draw(st.integers(0, len(w1)))
    arc2 = data.draw(st.integers(0, len(w2)))
    s = connected_sum(w1, w2, arc1, arc2)
    assert len(s) == len(w1) + len(w2)

    def singles(w):
        return Counter(str(canonicalize(subword(w, {c}))) for c in w.chords())

    # the second summand enters at its arc2
    assert singles(s) == singles(w1) + singles(rotate_base(w2, arc2))


def test_connected_sum_rebases_second_summand():
    assert connected_sum(EMPTY, parse("-1 1"), 0, 1) == parse("1 -1")
    assert connected_sum(EMPTY, parse("-1 1"), 0, 0) == parse("-1 1")


def test_empty_word_constant():
    assert EMPTY.code == ()
    assert EMPTY == BasedDecoratedWord(())
    assert canonical_key(EMPTY, KeyMode.UNBASED_UNORIENTED).code == ()
