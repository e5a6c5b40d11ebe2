"""Tests for gluing, the evaluation functor, and interface decomposition."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from skeincat.laurent import LaurentPoly
from skeincat.surface import (
    NonOrientableError,
    NormalDiagram,
    SkeinElement,
    annulus,
    core_curve,
    disk,
    enumerate_basis,
    skein_product,
)
from skeincat.tambara import (
    CollarObject,
    Iota,
    IotaInv,
    PositionedElement,
    TensorWord,
    spread,
)
from skeincat.excision import (
    BoundExceededError,
    FAITHFULNESS_MOVES,
    GluedSurface,
    HostSpec,
    InterfaceInterval,
    OrientationError,
    annulus_gluing,
    core_word,
    decompose_at_interface,
    disk_gluing,
    equivalence_report,
    faithfulness_instance,
    glue,
    image_object,
    image_word,
    normal_form,
    sample_basis_element,
    sample_tensor_word,
    split_boundary,
    translation_witness,
    verify_roundtrip,
    words_equal,
)

H = Fraction(1, 2)


# --- gluing ------------------------------------------------------------------


def test_standard_gluings():
    dg = disk_gluing()
    ag = annulus_gluing()
    assert (dg.surface, dg.arity) == (disk(), 1)
    assert (ag.surface, ag.arity) == (annulus(), 2)
    assert dg.surface.euler_characteristic == 1
    assert ag.surface.euler_characteristic == 0


def test_glue_arity_mismatch():
    with pytest.raises(ValueError):
        glue(
            HostSpec((InterfaceInterval("right"),)),
            HostSpec((InterfaceInterval("left"), InterfaceInterval("right"))),
        )


def test_glue_wrong_sides():
    with pytest.raises(ValueError):
        glue(HostSpec((InterfaceInterval("left"),)), HostSpec((InterfaceInterval("left"),)))


def test_reversed_junction_is_an_orientation_clash():
    with pytest.raises(OrientationError):
        glue(
            HostSpec((InterfaceInterval("right", reversed=True),)),
            HostSpec((InterfaceInterval("left"),)),
        )


def test_reversed_wrap_would_be_one_sided():
    with pytest.raises(NonOrientableError):
        glue(
            HostSpec((InterfaceInterval("right"), InterfaceInterval("left", reversed=True))),
            HostSpec((InterfaceInterval("left"), InterfaceInterval("right"))),
        )


def test_boundary_split_inverts_image():
    glued = disk_gluing()
    m, n = spread(2), spread(3)
    assert split_boundary(glued, image_object(glued, m, n)) == (m, n)
    with pytest.raises(ValueError):
        split_boundary(glued, (Fraction(1, 16),))


# --- the evaluation functor ----------------------------------------------------


def test_balancing_letters_evaluate_to_inverse_elements():
    for glued in (disk_gluing(), annulus_gluing()):
        a = CollarObject((((H,),) if glued.arity == 1 else ((H,), (H,))))
        m, n = (H,), ()
        fwd = image_word(glued, TensorWord.from_letters([Iota(m, a, n)]))
        back = image_word(glued, TensorWord.from_letters([IotaInv(m, a, n)]))
        both = fwd.compose(back)
        assert both == PositionedElement.identity(glued.surface, fwd.bottom)


def test_core_word_evaluates_to_the_core_curve():
    glued = annulus_gluing()
    w = core_word(glued, (), ())
    assert w.max_length() == 5
    img = image_word(glued, w)
    z = core_curve(annulus(), 0)
    assert img.element == z
    assert image_word(glued, w.compose(w)).element == skein_product(z, z)


def test_core_word_needs_the_band():
    with pytest.raises(ValueError):
        core_word(disk_gluing(), (), ())


# --- decomposition: elementary shapes -----------------------------------------


def elementary(glued, sizes, pairs, gates):
    nb_m, nb_n, nt_m, nt_n = sizes
    bot = image_object(glued, spread(nb_m), spread(nb_n))
    top = image_object(glued, spread(nt_m), spread(nt_n))
    nd = NormalDiagram.from_pairs(glued.surface, nb_m + nb_n, nt_m + nt_n, gates, pairs)
    return PositionedElement(bot, top, SkeinElement.single(nd))


ELEMENTARY_SHAPES = [
    # (gluing, sizes, matching, gate counts, letters, terms)
    ("disk", (1, 1, 1, 1), [(("B", 0), ("T", 0)), (("B", 1), ("T", 1))], (), 1, 1),
    ("disk", (1, 0, 0, 1), [(("B", 0), ("T", 0))], (), 3, 1),
    ("disk", (2, 0, 1, 1), [(("B", 0), ("T", 0)), (("B", 1), ("T", 1))], (), 3, 1),
    ("annulus", (0, 1, 1, 0), [(("B", 0), ("G", 1, 1)), (("G", 0, 1), ("T", 0))], (1, 1), 11, 2),
    ("annulus", (1, 1, 0, 0), [(("B", 0), ("G", 1, 1)), (("B", 1), ("G", 0, 1))], (1, 1), 3, 1),
    ("annulus", (0, 0, 0, 0), [(("G", 0, 1), ("G", 1, 1))], (1, 1), 5, 1),
]


def test_elementary_shapes_round_trip_with_expected_sizes():
    gluings = {"disk": disk_gluing(), "annulus": annulus_gluing()}
    for name, sizes, pairs, gates, letters, terms in ELEMENTARY_SHAPES:
        glued = gluings[name]
        pe = elementary(glued, sizes, pairs, gates)
        word = decompose_at_interface(glued, pe)
        assert word.canonical
        assert word.max_length() == letters, f"{name} {sizes}: {word.max_length()}"
        assert len(word.terms) == terms, f"{name} {sizes}: {len(word.terms)}"
        back = image_word(glued, word)
        assert (back.bottom, back.top, back.element) == (pe.bottom, pe.top, pe.element)


def test_decompose_is_deterministic():
    glued = annulus_gluing()
    pe = elementary(glued, (0, 1, 1, 0),
                    [(("B", 0), ("G", 1, 1)), (("G", 0, 1), ("T", 0))], (1, 1))
    w1 = decompose_at_interface(glued, pe)
    w2 = decompose_at_interface(glued, pe)
    assert (w1.bottom, w1.top, w1.terms) == (w2.bottom, w2.top, w2.terms)


def test_decompose_rejects_foreign_elements():
    pe = PositionedElement.identity(annulus(), (H,))
    with pytest.raises(ValueError):
        decompose_at_interface(disk_gluing(), pe)


def test_tight_bound_raises():
    glued = annulus_gluing()
    pe = elementary(glued, (0, 1, 1, 0),
                    [(("B", 0), ("G", 1, 1)), (("G", 0, 1), ("T", 0))], (1, 1))
    with pytest.raises(BoundExceededError):
        decompose_at_interface(glued, pe, bound=2)


# --- decomposition: exhaustive small bases -------------------------------------


def test_disk_basis_round_trips_exhaustively():
    glued = disk_gluing()
    checked = 0
    for nb in range(0, 4):
        for nt in range(0, 4):
            if (nb + nt) % 2:
                continue
            for sb in range(nb + 1):
                for st in range(nt + 1):
                    bot = image_object(glued, spread(sb), spread(nb - sb))
                    top = image_object(glued, spread(st), spread(nt - st))
                    for nd in enumerate_basis(disk(), nb, nt, 0):
                        pe = PositionedElement(bot, top, SkeinElement.single(nd))
                        back = image_word(glued, decompose_at_interface(glued, pe))
                        assert back.element == pe.element, (nb, nt, sb, st, nd)
                        checked += 1
    assert checked >= 40


def test_annulus_basis_round_trips_small():
    glued = annulus_gluing()
    checked = 0
    for nb, nt in [(0, 0), (1, 1), (0, 2), (2, 0), (2, 2)]:
        for sb in range(nb + 1):
            for st in range(nt + 1):
                bot = image_object(glued, spread(sb), spread(nb - sb))
                top = image_object(glued, spread(st), spread(nt - st))
                for nd in enumerate_basis(annulus(), nb, nt, 2):
                    pe = PositionedElement(bot, top, SkeinElement.single(nd))
                    back = image_word(glued, decompose_at_interface(glued, pe))
                    assert back.element == pe.element, (nb, nt, sb, st, nd)
                    checked += 1
    assert checked >= 100


# --- normal forms and equality ---------------------------------------------------


def test_normal_form_is_idempotent_on_samples():
    rng = random.Random(19)
    for glued in (disk_gluing(), annulus_gluing()):
        for _ in range(8):
            w = sample_tensor_word(rng, glued)
            n1 = normal_form(glued, w)
            n2 = normal_form(glued, n1)
            assert (n1.bottom, n1.top, n1.terms) == (n2.bottom, n2.top, n2.terms)


def test_words_equal_distinguishes_scalars():
    glued = disk_gluing()
    w = TensorWord.identity_word((H,), (H,))
    assert words_equal(glued, w, w) is True
    assert words_equal(glued, w, w.scale(LaurentPoly.monomial(1, 1))) is False


def test_words_equal_reports_none_when_the_bound_is_too_tight():
    glued = annulus_gluing()
    a = CollarObject(((), (H,)))
    w = TensorWord.from_letters([Iota((), a, ())])
    assert words_equal(glued, w, w, bound=1) is None


def test_faithfulness_moves_hold():
    rng = random.Random(23)
    for glued in (disk_gluing(), annulus_gluing()):
        for move in FAITHFULNESS_MOVES:
            lhs, rhs = faithfulness_instance(rng, glued, move)
            assert words_equal(glued, lhs, rhs) is True, f"{move} broke"
    with pytest.raises(ValueError):
        faithfulness_instance(rng, disk_gluing(), "pirouette")


# --- the verification harness -----------------------------------------------------


def test_roundtrip_report_is_clean():
    for glued, name in ((disk_gluing(), "disk"), (annulus_gluing(), "annulus")):
        report = verify_roundtrip(glued, sample_size=10, seed=1)
        assert report["gluing"] == name
        assert report["samples"] == 10
        assert report["failures"] == []


def test_equivalence_report_dimensions_agree():
    report = equivalence_report(disk_gluing(), seed=1)
    assert report["failures"] == []
    assert [d["lhs"] for d in report["dims"]] == [1, 1, 1, 2]
    assert all(d["lhs"] == d["rhs"] for d in report["dims"])
    report = equivalence_report(
        annulus_gluing(), pairs=((0, 0, 0, 0), (1, 0, 1, 0)), bound=1, seed=1
    )
    assert report["failures"] == []
    assert [d["lhs"] for d in report["dims"]] == [2, 3]
    assert all(d["lhs"] == d["rhs"] for d in report["dims"])
    assert all(w["invertible"] for w in report["witnesses"])


def test_annulus_closed_dimensions_count_core_powers():
    for k in range(0, 4):
        report = equivalence_report(
            annulus_gluing(), pairs=((0, 0, 0, 0),), bound=k, seed=0, witness_count=1
        )
        [dim] = report["dims"]
        assert dim["lhs"] == dim["rhs"] == k + 1


def test_translation_witness_validation():
    glued = disk_gluing()
    with pytest.raises(ValueError):
        translation_witness(glued, Fraction(0))
    with pytest.raises(ValueError):
        translation_witness(glued, Fraction(3, 2))
    ribbon = translation_witness(glued, H)
    assert ribbon.bottom == (H,)


def test_sampled_diagrams_stay_on_the_glued_surface():
    rng = random.Random(29)
    for glued in (disk_gluing(), annulus_gluing()):
        for _ in range(5):
            pe = sample_basis_element(rng, glued)
            assert pe.surface == glued.surface
            w = sample_tensor_word(rng, glued)
            assert image_word(glued, w).surface == glued.surface
