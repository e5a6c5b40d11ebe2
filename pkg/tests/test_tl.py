"""Category/monoidal axioms and braid relations for the planar-matching layer."""

import random

import pytest

from skeincat.laurent import DELTA, LaurentPoly
from skeincat.tl import (
    Matching,
    TLMorphism,
    braid_generator,
    compose,
    compose_matchings,
    dim_hom,
    enumerate_matchings,
    tensor,
    twist_scalar,
)


def random_morphism(rng, source, target, max_terms=3):
    basis = list(enumerate_matchings(source, target))
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = LaurentPoly.from_terms([(rng.randint(-3, 3), rng.randint(-4, 4))])
        terms.append((rng.choice(basis), coeff))
    return TLMorphism.from_terms(source, target, terms)


def test_matching_rejects_nonplanar():
    # the "X" pairing 2 -> 2 crosses
    with pytest.raises(ValueError):
        Matching.from_pairs(2, 2, [(0, 3), (1, 2)])
    # nested arcs 0 -> 4 are fine
    Matching.from_pairs(0, 4, [(0, 3), (1, 2)])


def test_matching_rejects_bad_cover():
    with pytest.raises(ValueError):
        Matching.from_pairs(2, 2, [(0, 1)])
    with pytest.raises(ValueError):
        Matching.from_pairs(1, 2, [(0, 1), (1, 2)])


def test_hook_squares_to_delta_hook():
    e = TLMorphism.basis(Matching.hook(2, 1))
    ee = compose(e, e)
    assert ee == e.scale(DELTA)


def test_circle_is_delta():
    birth = TLMorphism.basis(Matching.cup())
    death = TLMorphism.basis(Matching.cap())
    circ = compose(birth, death)
    assert circ.source == 0 and circ.target == 0
    assert circ.terms[0][1] == DELTA


def test_identity_laws():
    rng = random.Random(7)
    for _ in range(20):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        if (n + m) % 2:
            m += 1
        f = random_morphism(rng, n, m)
        assert compose(TLMorphism.identity(n), f) == f
        assert compose(f, TLMorphism.identity(m)) == f


def test_compose_associative():
    rng = random.Random(11)
    for _ in range(25):
        a, b, c, d = (rng.randint(0, 3) for _ in range(4))
        if (a + b) % 2:
            b += 1
        if (b + c) % 2:
            c += 1
        if (c + d) % 2:
            d += 1
        f = random_morphism(rng, a, b)
        g = random_morphism(rng, b, c)
        h = random_morphism(rng, c, d)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_tensor_unit_and_associativity():
    rng = random.Random(13)
    unit = TLMorphism.identity(0)
    for _ in range(15):
        f = random_morphism(rng, 2, 2)
        g = random_morphism(rng, 1, 1)
        h = random_morphism(rng, 0, 2)
        assert tensor(f, unit) == f
        assert tensor(unit, f) == f
        assert tensor(tensor(f, g), h) == tensor(f, tensor(g, h))


def test_interchange_law():
    rng = random.Random(17)
    for _ in range(15):
        f = random_morphism(rng, 2, 2)
        h = random_morphism(rng, 2, 0)
        g = random_morphism(rng, 1, 3)
        k = random_morphism(rng, 3, 1)
        lhs = compose(tensor(f, g), tensor(h, k))
        rhs = tensor(compose(f, h), compose(g, k))
        assert lhs == rhs


def test_reidemeister_two():
    for n in (2, 3, 4):
        for i in range(1, n):
            pos = braid_generator(n, i, +1)
            neg = braid_generator(n, i, -1)
            assert compose(pos, neg) == TLMorphism.identity(n)
            assert compose(neg, pos) == TLMorphism.identity(n)


def test_reidemeister_three():
    s1p = braid_generator(3, 1, +1)
    s2p = braid_generator(3, 2, +1)
    lhs = compose(compose(s1p, s2p), s1p)
    rhs = compose(compose(s2p, s1p), s2p)
    assert lhs == rhs


def test_braid_generator_shape_and_range():
    assert len(braid_generator(2, 1, +1).terms) == 2
    with pytest.raises(ValueError):
        braid_generator(2, 2, +1)
    with pytest.raises(ValueError):
        braid_generator(1, 1, +1)
    with pytest.raises(ValueError):
        braid_generator(3, 1, 0)


def test_dim_hom_catalan():
    catalan = [1, 1, 2, 5, 14, 42, 132]
    for n, expected in enumerate(catalan):
        assert dim_hom(0, 2 * n) == expected, f"dim_hom(0,{2*n}) != C_{n}"
    assert dim_hom(3, 3) == 5
    assert dim_hom(0, 3) == 0
    assert dim_hom(1, 2) == 0


def test_enumerated_matchings_are_distinct_and_planar():
    seen = set()
    for mat in enumerate_matchings(4, 4):
        assert mat not in seen
        seen.add(mat)
    assert len(seen) == 14


def test_twist_scalar_values():
    # With the fixed convention the positive kink contributes -q^-3.
    plus = twist_scalar(+1)
    minus = twist_scalar(-1)
    assert plus * minus == LaurentPoly.one()
    assert len(plus.terms) == 1
    exp, coeff = plus.terms[0]
    assert abs(exp) == 3 and abs(coeff) == 1
    assert plus == LaurentPoly.monomial(-1, -3)
    assert minus == LaurentPoly.monomial(-1, 3)


def test_loop_count_in_composition():
    # cup then cap twice, side by side: two loops
    birth2 = tensor(TLMorphism.basis(Matching.cup()), TLMorphism.basis(Matching.cup()))
    death2 = tensor(TLMorphism.basis(Matching.cap()), TLMorphism.basis(Matching.cap()))
    circ2 = compose(birth2, death2)
    assert circ2.terms[0][1] == DELTA * DELTA


def test_matching_compose_loop_counter_direct():
    e = Matching.hook(2, 1)
    out, loops = compose_matchings(e, e)
    assert out == e and loops == 1


def test_morphism_json_round_trip():
    rng = random.Random(23)
    for _ in range(10):
        f = random_morphism(rng, 2, 4)
        assert TLMorphism.from_json_obj(f.to_json_obj()) == f
