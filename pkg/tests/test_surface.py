"""Tests for skein categories on surfaces: resolution, normal forms, products."""

from __future__ import annotations

import json
import random

import pytest

from skeincat import corpus
from skeincat.diagram import Cap, Cross, Cup, ParseError, SliceWord, evaluate
from skeincat.laurent import DELTA, LaurentPoly
from skeincat.moves import MoveSpec, apply_move, applicable_moves
from skeincat.surface import (
    NonOrientableError,
    NormalDiagram,
    SkeinElement,
    StateLimitError,
    Surface,
    SurfaceWord,
    Thru,
    annulus,
    canonical_word,
    compose_words,
    core_curve,
    disk,
    enumerate_basis,
    four_punctured_sphere,
    normalize_word,
    parse_curve_word,
    print_curve_word,
    punctured_torus,
    reduce_gate_returns,
    resolve,
    skein_product,
    stack,
    token_cycle,
)
from skeincat.surforacle import resolve_bruteforce
from skeincat.tl import Matching, TLMorphism, dim_hom


def as_surface_word(word: SliceWord, surface=None) -> SurfaceWord:
    return SurfaceWord(surface or disk(), word.source_count, word.slices)


def element_of_tl(surface, word: SliceWord) -> TLMorphism:
    """Convert a resolved disk element back into the two-edge calculus."""
    x = resolve(as_surface_word(word, surface))
    b, t = x.bottom, x.top
    terms = []
    for nd, coeff in x.terms:
        pairs = []
        for p, q in nd.matching:
            def num(tok):
                return tok[1] if tok[0] == "B" else b + tok[1]
            pairs.append((num(p), num(q)))
        terms.append((Matching.from_pairs(b, t, pairs), coeff))
    return TLMorphism.from_terms(b, t, terms)


def random_surface_word(rng, surface, runs, squares):
    """A closed word: gate entries first, then random square slices, capped off."""
    slices = []
    counts = [0] * surface.slot_count
    for h, r in enumerate(runs):
        a, b = surface.handles[h]
        counts[a] = counts[b] = r
    for slot in range(surface.slot_count - 1, -1, -1):
        slices += [Thru(slot, 1)] * counts[slot]
    width = sum(counts)
    for _ in range(squares):
        options = ["cup"]
        if width >= 2:
            options += ["cross", "cross", "cap"]
        kind = rng.choice(options)
        if kind == "cup":
            slices.append(Cup(rng.randint(1, width + 1)))
            width += 2
        elif kind == "cap":
            slices.append(Cap(rng.randint(1, width - 1)))
            width -= 2
        else:
            slices.append(Cross(rng.randint(1, width - 1), rng.choice((1, -1))))
    while width:
        slices.append(Cap(rng.randint(1, width - 1)) if width > 2 else Cap(1))
        width -= 2
    return SurfaceWord(surface, 0, tuple(slices))


# --- surface presentations -------------------------------------------------


def test_surface_invariants():
    for surf, genus, boundary in [
        (disk(), 0, 1),
        (annulus(), 0, 2),
        (punctured_torus(), 1, 1),
        (four_punctured_sphere(), 0, 4),
    ]:
        assert surf.genus == genus, f"{surf} genus {surf.genus} != {genus}"
        assert surf.boundary_count == boundary
        assert surf.euler_characteristic == 2 - 2 * genus - boundary


def test_surface_json_round_trip():
    for surf in [disk(), annulus(), punctured_torus(), four_punctured_sphere()]:
        again = Surface.from_json_obj(json.loads(json.dumps(surf.to_json_obj())))
        assert again == surf


def test_twisted_handle_rejected():
    data = {"handles": [{"ends": [0, 1], "twisted": True}], "boundary_slots": 2}
    with pytest.raises(NonOrientableError):
        Surface.from_json_obj(data)


def test_bad_slot_usage_rejected():
    with pytest.raises(ValueError):
        Surface(((0, 0),))
    with pytest.raises(ValueError):
        Surface(((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        Surface.from_json_obj({"handles": [{"ends": [0, 1]}], "boundary_slots": 4})


# --- words -----------------------------------------------------------------


def test_gate_grouping_enforced():
    surf = punctured_torus()
    SurfaceWord(surf, 0, (Thru(3, 1), Thru(3, 1), Thru(1, 1), Cup(1), Cap(1), Cap(1)))
    with pytest.raises(ValueError):
        SurfaceWord(surf, 0, (Thru(1, 1), Thru(3, 1)))


def test_thru_position_locked():
    with pytest.raises(ValueError):
        Thru(0, 1, position=2)
    with pytest.raises(ValueError):
        Thru(0, 0)


def test_curve_word_parse_print_round_trip():
    surf = annulus()
    text = "0; thru@1:in; thru@0:in; cap@1"
    word = parse_curve_word(text, surf)
    assert print_curve_word(word) == text
    assert parse_curve_word(print_curve_word(word), surf) == word


def test_curve_word_parse_errors():
    surf = annulus()
    with pytest.raises(ParseError):
        parse_curve_word("0; thru@9:in", surf)  # no such slot
    err = None
    try:
        parse_curve_word("0; thru@0:sideways", surf)
    except ParseError as e:
        err = e
    assert err is not None and err.column == 4


def test_word_with_strand_ending_in_handle_rejected():
    surf = annulus()
    word = SurfaceWord(surf, 1, (Thru(1, -1),))
    with pytest.raises(ValueError):
        resolve(word)


# --- resolution against the two-edge calculus on the disk -------------------


def test_disk_resolution_matches_bracket_on_corpus():
    for name, word in corpus.bundled_corpus()[:10]:
        x = resolve(as_surface_word(word))
        assert x.terms, f"{name} resolved to zero"
        [(nd, coeff)] = x.terms
        assert nd == NormalDiagram.empty(disk())
        from skeincat.diagram import kauffman_bracket

        assert coeff == kauffman_bracket(word), f"{name} disagrees with the bracket"


def test_disk_resolution_matches_evaluation_on_open_words():
    rng = random.Random(7)
    for _ in range(12):
        word = corpus.random_word(rng, rng.randint(1, 6))
        direct = evaluate(word)
        via_surface = element_of_tl(disk(), word)
        assert via_surface == direct


# --- annulus ---------------------------------------------------------------


def z_powers(up_to: int) -> list[SkeinElement]:
    z = core_curve(annulus(), 0)
    out = [SkeinElement.unit(annulus())]
    for _ in range(up_to):
        out.append(skein_product(out[-1], z))
    return out


def test_annulus_core_from_text():
    word = parse_curve_word("0; thru@1:in; thru@0:in; cap@1", annulus())
    assert resolve(word) == core_curve(annulus(), 0)


def test_annulus_powers_multiply():
    basis = enumerate_basis(annulus(), 0, 0, 8)
    by_runs = {nd.gate_counts[0]: nd for nd in basis}
    powers = z_powers(8)
    for a in range(0, 5):
        for b in range(0, 9 - a):
            product = skein_product(powers[a], powers[b])
            assert product == SkeinElement.single(by_runs[a + b]), (
                f"z^{a} * z^{b} is not z^{a + b}"
            )


def test_annulus_product_commutes():
    powers = z_powers(4)
    for a, b in [(1, 2), (2, 3), (1, 4)]:
        assert skein_product(powers[a], powers[b]) == skein_product(
            powers[b], powers[a]
        )


def test_gate_return_collapses_to_circle():
    # a curve that enters the handle and doubles straight back is contractible
    surf = annulus()
    word = SurfaceWord(
        surf, 0, (Thru(1, 1), Thru(1, 1), Thru(0, 1), Thru(0, 1), Cap(1), Cap(1))
    )
    assert resolve(word) == SkeinElement.unit(surf).scale(DELTA)


# --- punctured torus ---------------------------------------------------------


def test_torus_core_product_two_terms_unit_monomials():
    surf = punctured_torus()
    x = core_curve(surf, 0)
    y = core_curve(surf, 1)
    p = skein_product(x, y)
    assert len(p.terms) == 2, f"expected 2 terms, got {len(p.terms)}"
    exponents = set()
    for _nd, coeff in p.terms:
        assert len(coeff.terms) == 1, f"coefficient {coeff} is not a monomial"
        exp, c = coeff.terms[0]
        assert c in (1, -1)
        exponents.add(exp)
    assert len(exponents) == 2
    assert skein_product(y, x) != p  # the torus skein algebra is noncommutative


def test_torus_products_match_bruteforce():
    surf = punctured_torus()
    pairs = [(0, 1), (1, 0), (0, 0), (1, 1)]
    for ha, hb in pairs:
        wx = canonical_word(core_curve(surf, ha).terms[0][0])
        wy = canonical_word(core_curve(surf, hb).terms[0][0])
        word = compose_words(wx, wy)
        assert resolve(word) == resolve_bruteforce(word)


def test_random_words_match_bruteforce():
    rng = random.Random(11)
    for surf in [annulus(), punctured_torus()]:
        for _ in range(8):
            runs = [rng.randint(0, 1) for _ in surf.handles]
            word = random_surface_word(rng, surf, runs, rng.randint(1, 5))
            if word.crossing_count() > 6:
                continue
            assert resolve(word) == resolve_bruteforce(word), print_curve_word(word)


# --- normal form ------------------------------------------------------------


def test_canonical_word_round_trip():
    for surf, bound in [(annulus(), 3), (punctured_torus(), 2)]:
        for bottom, top in [(0, 0), (1, 1), (0, 2), (2, 2)]:
            for nd in enumerate_basis(surf, bottom, top, bound):
                back = normalize_word(canonical_word(nd))
                assert back == SkeinElement.single(nd), f"round trip broke {nd}"


def test_normalize_rejects_crossings():
    word = SurfaceWord(disk(), 2, (Cross(1, 1),))
    with pytest.raises(ValueError):
        normalize_word(word)


def test_gate_return_reduction_confluent():
    rng = random.Random(23)
    surf = punctured_torus()
    from skeincat.surface import _noncrossing_matchings

    checked = 0
    for counts in [(1, 1, 1, 1), (2, 1, 2, 1), (2, 2, 2, 2)]:
        cyc = token_cycle(0, 0, counts)
        for pairs in _noncrossing_matchings(cyc):
            base = reduce_gate_returns(surf, pairs, counts)
            for _ in range(4):
                shuffled = reduce_gate_returns(
                    surf, pairs, counts, picker=lambda cands: rng.choice(cands)
                )
                assert shuffled == base, f"reduction order changed the result: {pairs}"
            checked += 1
    assert checked >= 16


# --- stacking ---------------------------------------------------------------


def test_stack_identity_laws():
    surf = punctured_torus()
    for nd in enumerate_basis(surf, 1, 1, 1)[:6]:
        x = SkeinElement.single(nd)
        assert stack(x, SkeinElement.identity(surf, 1)) == x
        assert stack(SkeinElement.identity(surf, 1), x) == x


def test_stack_associative():
    rng = random.Random(5)
    for surf in [annulus(), punctured_torus()]:
        basis = enumerate_basis(surf, 0, 0, 1)
        elems = []
        for _ in range(3):
            nd = rng.choice(basis)
            coeff = LaurentPoly.q_power(rng.randint(-2, 2))
            elems.append(SkeinElement.single(nd).scale(coeff))
        x, y, z = elems
        assert stack(stack(x, y), z) == stack(x, stack(y, z))


def test_stack_endpoint_mismatch():
    surf = annulus()
    with pytest.raises(ValueError):
        stack(SkeinElement.identity(surf, 1), SkeinElement.identity(surf, 2))
    with pytest.raises(ValueError):
        skein_product(SkeinElement.identity(surf, 1), SkeinElement.unit(surf))


# --- moves on surface words --------------------------------------------------


def test_moves_preserve_resolution():
    rng = random.Random(31)
    surf = punctured_torus()
    tried = 0
    for _ in range(12):
        runs = [rng.randint(0, 1) for _ in surf.handles]
        word = random_surface_word(rng, surf, runs, rng.randint(1, 4))
        if word.crossing_count() > 5:
            continue
        base = resolve(word)
        moves = applicable_moves(
            word, kinds=("r2_insert", "r2_cancel", "r3", "interchange", "zigzag_insert")
        )
        for spec in moves[:6]:
            moved = apply_move(word, spec)
            assert resolve(moved) == base, f"{spec} changed the resolution"
            tried += 1
    assert tried >= 10


def test_kink_scales_resolution():
    from skeincat.tl import twist_scalar

    word = parse_curve_word("0; thru@1:in; thru@0:in; cap@1", annulus())
    kinked = apply_move(word, MoveSpec("kink_insert", index=2, position=1, sign=1))
    assert resolve(kinked) == resolve(word).scale(twist_scalar(1))


# --- basis enumeration --------------------------------------------------------


def test_disk_basis_counts_match_hom_dimensions():
    for bottom in range(0, 7):
        for top in range(0, 13 - bottom):
            count = len(enumerate_basis(disk(), bottom, top, 0))
            assert count == dim_hom(bottom, top), (bottom, top, count)


def test_annulus_closed_basis_counts():
    for k in range(0, 9):
        basis = enumerate_basis(annulus(), 0, 0, k)
        assert len(basis) == k + 1, f"bound {k}: {len(basis)} diagrams"


def test_basis_entries_distinct_and_sorted():
    basis = enumerate_basis(punctured_torus(), 0, 2, 2)
    assert len(set(basis)) == len(basis)
    assert [nd.sort_key() for nd in basis] == sorted(nd.sort_key() for nd in basis)


def test_state_limit_enforced():
    rng = random.Random(3)
    word = random_surface_word(rng, annulus(), [2], 8)
    resolve(word, max_states=1 << 20)
    with pytest.raises(StateLimitError):
        resolve(word, max_states=2)
