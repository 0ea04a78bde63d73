import pytest

from spherecurves.core.errors import NonRealizableError, StaleMoveError
from spherecurves.services.embedding import realizable
from spherecurves.services.gauss import EMPTY, parse
from spherecurves.services.invariants import invariant_vector, preserved_invariants
from spherecurves.services.moves import (
    ALL_KINDS,
    MoveKind,
    all_moves,
    apply,
    enumerate_moves,
    move_delta,
    neighbours,
    parse_kinds,
    triangle_kind,
)


def _results(moves):
    return {m.result for m in moves}


def test_self_tangency_on_circle():
    moves = enumerate_moves(EMPTY, MoveKind.S2_ADD)
    assert parse("1 -2 2 -1") in _results(moves)
    assert all(m.label == "s2a" for m in moves)


def test_no_weak_rii_on_circle():
    assert enumerate_moves(EMPTY, MoveKind.W2_ADD) == []


def test_trefoil_triangles_are_strong(trefoil):
    strong = enumerate_moves(trefoil, MoveKind.S3)
    assert len(strong) == 2
    assert enumerate_moves(trefoil, MoveKind.W3) == []
    assert parse("-1 2 -2 3 -3 1") in _results(strong)
    assert all(m.label == "s3b" and m.dx == -3 for m in strong)


def test_apply_kink():
    add = [m for m in enumerate_moves(EMPTY, MoveKind.R1_ADD) if m.result == parse("1 -1")]
    assert len(add) == 1
    kink = apply(EMPTY, add[0])
    assert kink == parse("1 -1")
    (remove,) = enumerate_moves(kink, MoveKind.R1_DEL)
    assert apply(kink, remove) == EMPTY
    assert remove.label == "1b"


def test_apply_self_tangency():
    (m,) = [m for m in enumerate_moves(EMPTY, MoveKind.S2_ADD) if m.result == parse("1 -2 2 -1")]
    assert apply(EMPTY, m) == parse("1 -2 2 -1")


def test_stale_move(trefoil):
    m = enumerate_moves(EMPTY, MoveKind.R1_ADD)[0]
    with pytest.raises(StaleMoveError):
        apply(trefoil, m)


def test_non_realizable_input():
    with pytest.raises(NonRealizableError):
        enumerate_moves(parse("1 -2 -1 2"), MoveKind.R1_ADD)


def test_rii_deletion_on_self_tangency():
    w = parse("1 -2 2 -1")
    (m,) = enumerate_moves(w, MoveKind.S2_DEL)
    assert m.label == "s2b"
    assert apply(w, m) == EMPTY
    assert enumerate_moves(w, MoveKind.W2_DEL) == []


def test_r1_delta(trefoil):
    for m in enumerate_moves(trefoil, MoveKind.R1_ADD):
        delta = move_delta(trefoil, m)
        assert (delta["u"], delta["b"], delta["lr"]) == (0, 0, 0)
        assert (delta["s"], delta["n"]) == (1, 1)


def test_s3b_delta(trefoil):
    for m in enumerate_moves(trefoil, MoveKind.S3):
        delta = move_delta(trefoil, m)
        assert (delta["u"], delta["b"], delta["lr"], delta["x"]) == (-1, -1, -1, -3)


def test_neighbours_respect_crossing_bound(trefoil):
    assert neighbours(trefoil, [MoveKind.R1_ADD], max_n=3) == []
    assert neighbours(trefoil, [MoveKind.R1_ADD], max_n=4)
    assert len(all_moves(trefoil, [MoveKind.S3, MoveKind.W3])) == 2


def test_parse_kinds():
    assert parse_kinds(["R1"]) == [MoveKind.R1_ADD, MoveKind.R1_DEL]
    assert parse_kinds(["S3", "W2_add"]) == [MoveKind.S3, MoveKind.W2_ADD]
    assert parse_kinds(["all"]) == list(ALL_KINDS)
    with pytest.raises(ValueError):
        parse_kinds(["R4"])


def test_triangle_kind_follows_setting(monkeypatch):
    from spherecurves.core import config

    assert triangle_kind(True) is MoveKind.S3
    monkeypatch.setattr(config.settings, "STRONG_RIII_TRIANGLE", "incoherent")
    assert triangle_kind(True) is MoveKind.W3


def _check_move_suite(words):
    """Per-move invariance and signatures over every generated instance."""
    for w in words:
        for m in all_moves(w):
            assert realizable(m.result)
            delta = move_delta(w, m)
            for name in preserved_invariants([m.kind]):
                assert delta[name] == 0, (w, m.label, m.site, name)
            if m.kind in (MoveKind.R1_ADD, MoveKind.R1_DEL):
                assert delta["s"] == delta["n"]
            elif m.kind is MoveKind.S3:
                assert delta["u"] == delta["b"] == delta["lr"] in (1, -1), (w, m.site)
                assert delta["x"] == 3 * delta["u"]
            elif m.kind is MoveKind.W3:
                assert delta["u"] == delta["b"] == 0, (w, m.site)
                assert abs(delta["lr"]) == 1
                assert delta["mu"] == -2 * delta["lr"]
                assert delta["x"] == delta["lr"]
            elif m.kind is MoveKind.S2_ADD:
                assert delta["u"] == delta["b"]
                assert delta["lr"] == delta["u"] + delta["b"]
            elif m.kind is MoveKind.W2_ADD:
                assert delta["s"] == 0 and delta["n"] == 2
                assert delta["lr"] == 2 * delta["u"] - 1


def test_move_suites(corpus4):
    _check_move_suite(corpus4)


@pytest.mark.slow
def test_move_suites_n5(corpus5):
    _check_move_suite(corpus5)


def test_move_labels_track_dx(corpus4):
    for w in corpus4:
        for m in all_moves(w, [MoveKind.S3, MoveKind.W3]):
            assert m.label.endswith("a") == (m.dx > 0)
            assert invariant_vector(m.result).x - invariant_vector(w).x == m.dx
