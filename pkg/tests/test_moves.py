"""Evaluation invariance under the local move catalogue."""

import random

import pytest

from skeincat.corpus import random_word
from skeincat.diagram import Cap, Cross, Cup, SliceWord, evaluate
from skeincat.moves import (
    MoveError,
    MoveSpec,
    apply_move,
    applicable_moves,
    apply_r3,
    cancel_kink,
    cancel_r2,
    cancel_zigzag,
    insert_kink,
    insert_r2,
    insert_zigzag,
    interchange,
)
from skeincat.tl import twist_scalar


def test_r2_insert_cancel_round_trip():
    w = SliceWord(2, (Cross(1, 1),))
    w2 = insert_r2(w, 0, 1, 1)
    assert len(w2.slices) == 3
    assert cancel_r2(w2, 0) == w
    assert evaluate(w2) == evaluate(w)


def test_r3_rewrites_every_homogeneous_triple():
    for sign in (1, -1):
        for p0, p1 in ((1, 2), (2, 1)):
            w = SliceWord(3, (Cross(p0, sign), Cross(p1, sign), Cross(p0, sign)))
            w2 = apply_r3(w, 0)
            assert [s.position for s in w2.slices] == [p1, p0, p1]
            assert evaluate(w2) == evaluate(w)


def test_r3_rejects_mixed_signs():
    w = SliceWord(3, (Cross(1, 1), Cross(2, -1), Cross(1, 1)))
    with pytest.raises(MoveError):
        apply_r3(w, 0)


def test_interchange_shifts_positions():
    # a cup far left of a crossing: swapping must renumber the crossing
    w = SliceWord(2, (Cup(1), Cross(3, 1)))
    w2 = interchange(w, 0)
    assert w2.slices == (Cross(1, 1), Cup(1))
    assert evaluate(w2) == evaluate(w)
    # and back
    w3 = interchange(w2, 0)
    assert w3 == w


def test_interchange_rejects_overlap():
    w = SliceWord(3, (Cross(1, 1), Cross(2, 1)))
    with pytest.raises(MoveError):
        interchange(w, 0)


def test_zigzag_insert_cancel():
    w = SliceWord(1)
    for variant in ("left", "right"):
        w2 = insert_zigzag(w, 0, 1, variant)
        assert evaluate(w2) == evaluate(w)
        assert cancel_zigzag(w2, 0) == w


def test_kink_scales_by_twist():
    w = SliceWord(1)
    for sign in (1, -1):
        w2 = insert_kink(w, 0, 1, sign)
        assert evaluate(w2) == evaluate(w).scale(twist_scalar(sign))
        assert cancel_kink(w2, 0) == w


def test_kink_stacking_multiplies_twists():
    w = SliceWord(2, (Cross(1, 1),))
    expected = evaluate(w)
    cur = w
    for k in range(3):
        cur = insert_kink(cur, 0, 2, 1)
        expected = expected.scale(twist_scalar(1))
        assert evaluate(cur) == expected


def test_random_move_sequences_preserve_eval():
    rng = random.Random(42)
    kinds = (
        "r2_insert",
        "r2_cancel",
        "r3",
        "interchange",
        "zigzag_insert",
        "zigzag_cancel",
    )
    for _ in range(60):
        w = random_word(rng, rng.randint(0, 10))
        reference = evaluate(w)
        cur = w
        for _ in range(rng.randint(1, 6)):
            options = applicable_moves(cur, kinds)
            if not options:
                break
            cur = apply_move(cur, rng.choice(options))
        assert evaluate(cur) == reference


def test_apply_move_dispatch_and_unknown_kind():
    w = SliceWord(1)
    out = apply_move(w, MoveSpec("zigzag_insert", 0, 1))
    assert len(out.slices) == 2
    with pytest.raises(MoveError):
        apply_move(w, MoveSpec("shuffle", 0))
