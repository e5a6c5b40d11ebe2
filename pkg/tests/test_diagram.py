"""Evaluation functor, bracket, parser, and the state-sum cross-check."""

import random

import pytest

from skeincat import tl
from skeincat.corpus import (
    bundled_corpus,
    figure_eight_word,
    plat_torus_word,
    random_closed_word,
    random_word,
    unlink_word,
)
from skeincat.diagram import (
    Cap,
    Coupon,
    Cross,
    Cup,
    ParseError,
    SliceWord,
    concatenate,
    evaluate,
    kauffman_bracket,
    parse_word,
    print_word,
)
from skeincat.laurent import DELTA, LaurentPoly
from skeincat.statesum import state_sum
from skeincat.tl import Matching, TLMorphism


def test_empty_word_is_identity():
    for n in range(5):
        assert evaluate(SliceWord(n)) == TLMorphism.identity(n)


def test_circle_word_is_delta():
    w = parse_word("0; cup@1; cap@1")
    assert evaluate(w).terms[0][1] == DELTA
    assert kauffman_bracket(w) == DELTA


def test_unlinks_are_delta_powers():
    for k in range(1, 6):
        assert kauffman_bracket(unlink_word(k)) == DELTA**k


def test_bracket_requires_closed_word():
    with pytest.raises(ValueError):
        kauffman_bracket(SliceWord(2))
    with pytest.raises(ValueError):
        kauffman_bracket(SliceWord(0, (Cup(1),)))


def test_width_errors_name_the_slice():
    with pytest.raises(ValueError, match="slice 1"):
        SliceWord(0, (Cup(1), Cross(2, 1)))
    with pytest.raises(ValueError, match="slice 0"):
        SliceWord(1, (Cap(1),))


def test_functoriality_of_concatenation():
    rng = random.Random(5)
    for _ in range(20):
        w1 = random_word(rng, rng.randint(0, 6))
        w2 = random_word(rng, rng.randint(0, 6), start_width=w1.target_count)
        both = concatenate(w1, w2)
        assert evaluate(both) == tl.compose(evaluate(w1), evaluate(w2))


def test_coupon_substitutes_its_label():
    e = TLMorphism.basis(Matching.hook(2, 1))
    w = SliceWord(2, (Coupon(1, 2, 2, "e", e),))
    assert evaluate(w) == e
    # the coupon behaves exactly like the slices it abbreviates
    ww = SliceWord(2, (Cap(1), Cup(1)))
    assert evaluate(ww) == e


def test_coupon_arity_mismatch_rejected():
    e = TLMorphism.basis(Matching.hook(2, 1))
    with pytest.raises(ValueError):
        Coupon(1, 2, 4, "e", e)


def test_hopf_word_from_text_matches_state_sum():
    w = parse_word("0; cup@1; cup@1; x+@2; x+@2; cap@2; cap@1")
    assert kauffman_bracket(w) == state_sum(w)


def test_bracket_equals_state_sum_on_bundled_corpus_sample():
    for name, w in bundled_corpus()[:12]:
        assert kauffman_bracket(w) == state_sum(w), f"bracket/state-sum split on {name}"


def test_bracket_equals_state_sum_on_random_words():
    rng = random.Random(31)
    for _ in range(15):
        w = random_closed_word(rng, max_crossings=5)
        assert kauffman_bracket(w) == state_sum(w), print_word(w)


def test_trefoil_bracket_matches_oracle_and_differs_from_mirror():
    t = plat_torus_word(3)
    tm = plat_torus_word(3, sign=-1)
    assert kauffman_bracket(t) == state_sum(t)
    assert kauffman_bracket(t) != kauffman_bracket(tm)


def test_figure_eight_bracket_is_palindromic():
    # amphichiral knot: bracket should be fixed under q -> q^-1
    b = kauffman_bracket(figure_eight_word())
    flipped = LaurentPoly.from_terms([(-e, c) for e, c in b.terms])
    assert b == flipped
    assert b == state_sum(figure_eight_word())


def test_parse_print_round_trip():
    rng = random.Random(9)
    for _ in range(20):
        w = random_word(rng, rng.randint(0, 8))
        assert parse_word(print_word(w)) == w


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as info:
        parse_word("0; cup@1;\n wobble@2")
    assert info.value.line == 2 and info.value.column == 2
    with pytest.raises(ParseError):
        parse_word("")
    with pytest.raises(ParseError):
        parse_word("two; cup@1")
    with pytest.raises(ParseError):
        parse_word("0; coupon@1:0:2:nosuch")


def test_state_sum_rejects_coupons_and_open_words():
    e = TLMorphism.basis(Matching.hook(2, 1))
    with pytest.raises(ValueError):
        state_sum(SliceWord(2, (Coupon(1, 2, 2, "e", e),)))
    with pytest.raises(ValueError):
        state_sum(SliceWord(2))
