"""Gluing two square pieces and decomposing diagrams at the interface.

Gluing
------
Each host piece exposes one or two interface intervals: component 0 joins
M's right edge to N's left edge (the junction); component 1, if present,
joins M's left edge to N's right edge (the wrap).  Gluing along the
junction alone yields a square; adding the wrap yields the surface with
one handle whose band realises the wrap.  M-side positions land in the
left half of the glued interval via x/2 and N-side positions in the right
half via (1 + x)/2.

Evaluation
----------
Balanced words (module tambara) evaluate to positioned skein elements on
the glued surface.  Pair letters act side by side and never cross the
midpoint 1/2.  A junction transport is an identity matching that carries
collar points from M's right window to N's left window.  A wrap transport
dives into the band at slot 1 and re-emerges at slot 0: the k collar
strands cross as one block, after which every middle strand slides back
past the block; the inverse is assembled from one-strand passages and
elementary crossings, each inverted exactly (a single reverse passage
carries the framing correction -q^3).

Decomposition
-------------
decompose_at_interface writes a positioned element as a canonical balanced
word, term by term.  Closed curves through the band are peeled first as
cup/transport/cap gadgets; open band passages are peeled from the top by
composing with the exact inverse of a wrap letter; junction crossings are
peeled one strand at a time; what remains splits at 1/2 into a single
Pair letter.  Every peel is an algebraic identity, so evaluating the
output word recovers the input element exactly.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from skeincat.laurent import LaurentPoly
from skeincat.surface import (
    Cross,
    NonOrientableError,
    NormalDiagram,
    SkeinElement,
    Surface,
    SurfaceWord,
    Thru,
    annulus,
    compose_words,
    disk,
    enumerate_basis,
    resolve,
    stack,
)
from skeincat.tambara import (
    CollarObject,
    CollarMorphism,
    HALF,
    Iota,
    IotaInv,
    Pair,
    PositionedElement,
    TensorWord,
    act_left_object,
    act_right_object,
    act_left_morphism,
    act_right_morphism,
    glue_left,
    glue_right,
    juxtapose,
    middle,
    relation_instances,
    sample_collar_morphism,
    sample_collar_object,
    sample_host_morphism,
    spread,
    word_to_json_obj,
)


class OrientationError(ValueError):
    """The junction would be glued against the boundary orientation."""


class BoundExceededError(RuntimeError):
    """A decomposition grew past the requested letter bound."""


_SLIDE_SIGN = 1  # crossing sign used when the emerged block slides past middles
_KINK = LaurentPoly.monomial(-1, 3)  # framing correction for one reverse passage


# ---------------------------------------------------------------------------
# gluing specifications


@dataclass(frozen=True)
class InterfaceInterval:
    """One glued boundary interval of a host piece."""

    side: str
    reversed: bool = False

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"interface side must be 'left' or 'right', got {self.side!r}")


@dataclass(frozen=True)
class HostSpec:
    """The interface intervals a host piece offers, component by component."""

    interfaces: tuple[InterfaceInterval, ...]

    def __post_init__(self):
        if len(self.interfaces) not in (1, 2):
            raise ValueError("a host exposes one or two interface components")


@dataclass(frozen=True)
class GluedSurface:
    """The result of gluing: the model surface plus the interface count."""

    surface: Surface
    arity: int


def glue(mspec: HostSpec, nspec: HostSpec) -> GluedSurface:
    """Glue two squares along their declared interface components."""
    if len(mspec.interfaces) != len(nspec.interfaces):
        raise ValueError(
            f"interface arities differ: {len(mspec.interfaces)} vs {len(nspec.interfaces)}"
        )
    arity = len(mspec.interfaces)
    expected = (("right", "left"), ("left", "right"))
    for k, (mi, ni) in enumerate(zip(mspec.interfaces, nspec.interfaces)):
        if (mi.side, ni.side) != expected[k]:
            raise ValueError(
                f"component {k} must join M's {expected[k][0]} edge to N's "
                f"{expected[k][1]} edge, got {mi.side!r} and {ni.side!r}"
            )
        if mi.reversed != ni.reversed:
            if k == 0:
                raise OrientationError(
                    "the junction intervals are traversed in opposite directions"
                )
            raise NonOrientableError(
                "reversing one side of the wrap produces a one-sided band"
            )
    surface = disk() if arity == 1 else annulus()
    assert surface.euler_characteristic == 2 - arity
    return GluedSurface(surface, arity)


def disk_gluing() -> GluedSurface:
    """Two squares joined along the junction alone."""
    return glue(
        HostSpec((InterfaceInterval("right"),)),
        HostSpec((InterfaceInterval("left"),)),
    )


def gluing_from_json_obj(data: dict) -> GluedSurface:
    """Build a gluing from {"hosts": [{"interface": [{"side", "reversed"}]}]}."""
    hosts = data.get("hosts", [])
    if len(hosts) != 2:
        raise ValueError(f"a gluing file lists exactly two hosts, got {len(hosts)}")
    specs = []
    for entry in hosts:
        specs.append(
            HostSpec(
                tuple(
                    InterfaceInterval(item.get("side"), bool(item.get("reversed", False)))
                    for item in entry.get("interface", ())
                )
            )
        )
    return glue(specs[0], specs[1])


def load_gluing(text: str) -> GluedSurface:
    return gluing_from_json_obj(json.loads(text))


def annulus_gluing() -> GluedSurface:
    """Two squares joined along both the junction and the wrap."""
    return glue(
        HostSpec((InterfaceInterval("right"), InterfaceInterval("left"))),
        HostSpec((InterfaceInterval("left"), InterfaceInterval("right"))),
    )


# ---------------------------------------------------------------------------
# the evaluation functor


def image_object(glued: GluedSurface, m, n) -> tuple[Fraction, ...]:
    """Glued positions of the pair (m, n)."""
    return tuple(glue_left(middle(x)) for x in m) + tuple(
        glue_right(middle(y)) for y in n
    )


def split_boundary(glued: GluedSurface, pts) -> tuple[tuple, tuple]:
    """Invert image_object, recovering the (m, n) position pair."""
    m, n = [], []
    for p in pts:
        if p < HALF:
            x = 4 * (p - Fraction(1, 8))
            if not 0 < x < 1:
                raise ValueError(f"{p} is not a glued image of a host position")
            m.append(x)
        else:
            y = 4 * (p - Fraction(5, 8))
            if not 0 < y < 1:
                raise ValueError(f"{p} is not a glued image of a host position")
            n.append(y)
    return tuple(m), tuple(n)


def _transplant(element: SkeinElement, surface: Surface) -> SkeinElement:
    """Re-read a gate-free element on another surface."""
    zero = (0,) * surface.slot_count
    items = []
    for nd, c in element.terms:
        if any(nd.gate_counts):
            raise ValueError("only gate-free elements can change surface")
        items.append(
            (
                NormalDiagram.from_pairs(surface, nd.bottom, nd.top, zero, nd.matching),
                c,
            )
        )
    return SkeinElement.from_terms(surface, element.bottom, element.top, items)


def _pair_image(glued: GluedSurface, letter: Pair) -> PositionedElement:
    f = letter.f.mapped(lambda x: glue_left(middle(x)))
    g = letter.g.mapped(lambda y: glue_right(middle(y)))
    element = juxtapose(
        glued.surface,
        [_transplant(f.element, glued.surface), _transplant(g.element, glued.surface)],
    )
    return PositionedElement(f.bottom + g.bottom, f.top + g.top, element)


def _wrap_atoms(k1: int, mids: int) -> list:
    """Elementary factors of a k1-strand wrap transport with mids spectators.

    Each atom is ("word", slices) resolving to a single diagram, or
    ("reverse", ()) for one strand re-entering at slot 0 (whose exact
    inverse needs the -q^3 correction).  Atoms are listed bottom-up.
    """
    atoms: list = []
    for i in range(1, k1 + 1):
        for l in range(i - 1, 0, -1):
            atoms.append(("cross", (l, -1)))
        atoms.append(("pass", ()))
    for i in range(2, k1 + 1):
        for l in range(i - 1, 0, -1):
            atoms.append(("cross", (l, 1)))
    for j in range(1, mids + 1):
        for i in range(k1 + j - 1, j - 1, -1):
            atoms.append(("cross", (i, _SLIDE_SIGN)))
    return atoms


@functools.lru_cache(maxsize=None)
def _atom_element(glued: GluedSurface, atom, count: int, invert: bool) -> PositionedElement | SkeinElement:
    kind, data = atom
    surf = glued.surface
    if kind == "cross":
        pos, sign = data
        if invert:
            sign = -sign
        return resolve(SurfaceWord(surf, count, (Cross(pos, sign),)))
    assert kind == "pass"
    if not invert:
        return resolve(SurfaceWord(surf, count, (Thru(1, -1), Thru(0, 1))))
    back = compose_words(
        SurfaceWord(surf, count, (Thru(0, -1),)),
        SurfaceWord(surf, count - 1, (Thru(1, 1),)),
    )
    return resolve(back).scale(_KINK)


@functools.lru_cache(maxsize=None)
def _wrap_element(glued: GluedSurface, k1: int, mids: int, invert: bool) -> SkeinElement:
    count = k1 + mids
    atoms = _wrap_atoms(k1, mids)
    if invert:
        atoms = list(reversed(atoms))
    total = SkeinElement.identity(glued.surface, count)
    for atom in atoms:
        total = stack(total, _atom_element(glued, atom, count, invert))
    return total


def _iota_image(glued: GluedSurface, letter: Iota | IotaInv) -> PositionedElement:
    forward = isinstance(letter, Iota)
    bottom = image_object(glued, *letter.bottom_pair())
    top = image_object(glued, *letter.top_pair())
    if glued.arity == 1:
        return PositionedElement(
            bottom, top, SkeinElement.identity(glued.surface, len(bottom))
        )
    k1 = len(letter.a.components[1])
    if k1 >= 2:
        return _multi_wrap_image(glued, letter, forward)
    mids = len(letter.m) + len(letter.a.components[0]) + len(letter.n)
    element = _wrap_element(glued, k1, mids, invert=not forward)
    return PositionedElement(bottom, top, element)


def _multi_wrap_image(glued: GluedSurface, letter, forward: bool) -> PositionedElement:
    """A transport of several wrap points, one point at a time.

    The leftmost wrap point travels first; splitting this way keeps block
    transports and chained single transports equal on the nose, which is
    what the merge move needs.
    """
    m, a, n = letter.m, letter.a, letter.n
    rest = CollarObject((a.components[0], a.components[1][1:]))
    one = CollarObject(((), a.components[1][:1]))
    inner = act_right_object(m, rest)
    mid_n = act_left_object(one, n)
    id_m = PositionedElement.identity(disk(), m)
    id_n = PositionedElement.identity(disk(), n)
    if forward:
        first = Iota(inner, one, n)
        second = Iota(m, rest, mid_n)
        chain = [
            Pair(
                PositionedElement.translation(
                    disk(), act_right_object(m, a), first.bottom_pair()[0]
                ),
                id_n,
            ),
            first,
            second,
            Pair(
                id_m,
                PositionedElement.translation(
                    disk(), second.top_pair()[1], act_left_object(a, n)
                ),
            ),
        ]
    else:
        chain = [
            Pair(
                id_m,
                PositionedElement.translation(
                    disk(), act_left_object(a, n), act_left_object(rest, mid_n)
                ),
            ),
            IotaInv(m, rest, mid_n),
            IotaInv(inner, one, n),
            Pair(
                PositionedElement.translation(
                    disk(), act_right_object(inner, one), act_right_object(m, a)
                ),
                id_n,
            ),
        ]
    return image_word(glued, TensorWord.from_letters(chain))


@functools.lru_cache(maxsize=1 << 14)
def letter_image(glued: GluedSurface, letter) -> PositionedElement:
    if isinstance(letter, Pair):
        return _pair_image(glued, letter)
    if isinstance(letter, (Iota, IotaInv)):
        return _iota_image(glued, letter)
    raise ValueError(f"unknown letter {letter!r}")


def image_word(glued: GluedSurface, word: TensorWord, max_states=None) -> PositionedElement:
    """Evaluate a balanced word to a positioned element of the glued surface."""
    bottom = image_object(glued, *word.bottom)
    top = image_object(glued, *word.top)
    total = PositionedElement(
        bottom, top, SkeinElement.zero(glued.surface, len(bottom), len(top))
    )
    for coeff, letters in word.terms:
        part = PositionedElement.identity(glued.surface, bottom)
        for letter in letters:
            part = part.compose(letter_image(glued, letter), max_states)
        total = total + part.scale(coeff)
    return total


# ---------------------------------------------------------------------------
# decomposition at the interface


@functools.lru_cache(maxsize=None)
def shuttle(count: int, frm: int, to: int, sign: int = 1) -> SkeinElement:
    """Carry the strand at 1-based position frm to position to on the square.

    The move is a resolved braid, so it is exactly invertible: shuttle(frm,
    to, s) composed with shuttle(to, frm, -s) is the identity.
    """
    if not 1 <= frm <= count and 1 <= to <= count:
        raise ValueError(f"positions must lie in 1..{count}")
    if frm < to:
        slices = tuple(Cross(i, sign) for i in range(frm, to))
    else:
        slices = tuple(Cross(i, sign) for i in range(frm - 1, to - 1, -1))
    return resolve(SurfaceWord(disk(), count, slices))


def _tier(token) -> int:
    if token[0] == "B":
        return 0
    if token[0] == "G":
        return 2 - token[1]
    return 3


def _strip_cores(nd: NormalDiagram) -> tuple[NormalDiagram, int]:
    """Remove closed band runs, returning the open diagram and the count."""
    cores = 0
    pairs = list(nd.matching)
    counts = list(nd.gate_counts)
    while True:
        k = counts[0] if counts else 0
        hit = None
        for a, b in pairs:
            if a[0] == "G" and b[0] == "G":
                i, j = (a[2], b[2]) if a[1] == 0 else (b[2], a[2])
                if i + j == k + 1:
                    hit = (i, j)
                    break
        if hit is None:
            break
        cores += 1
        i, j = hit
        removed = {("G", 0, i), ("G", 1, j)}
        pairs = [
            (_drop_gate(u, i, j), _drop_gate(v, i, j))
            for u, v in pairs
            if u not in removed and v not in removed
        ]
        counts[0] -= 1
        counts[1] -= 1
    # remaining gate-to-gate pairs belong to open arcs winding several times
    out = NormalDiagram.from_pairs(nd.surface, nd.bottom, nd.top, tuple(counts), pairs)
    return out, cores


def _drop_gate(token, i: int, j: int):
    if token[0] != "G":
        return token
    slot, idx = token[1], token[2]
    cut = i if slot == 0 else j
    assert idx != cut
    return ("G", slot, idx - 1 if idx > cut else idx)


def _inverse_letter(letter):
    if isinstance(letter, Iota):
        return IotaInv(letter.m, letter.a, letter.n)
    assert isinstance(letter, IotaInv)
    return Iota(letter.m, letter.a, letter.n)


class _Peeler:
    """Writes a positioned element as a balanced word, one strand at a time."""

    def __init__(self, glued: GluedSurface, budget: int):
        self.glued = glued
        self.initial = budget
        self.budget = budget
        self.cache: dict = {}
        self.in_progress: set = set()

    def spend(self, letters: int):
        self.budget -= letters
        if self.budget < 0:
            raise BoundExceededError("the decomposition exceeded the letter bound")

    def run(self, pe: PositionedElement) -> TensorWord:
        bot = split_boundary(self.glued, pe.bottom)
        top = split_boundary(self.glued, pe.top)
        total = TensorWord.zero(bot, top)
        for nd, coeff in pe.element.terms:
            # each input diagram gets the full letter budget; the recursive
            # peels below share one allowance so a cycle still trips the bound
            self.budget = self.initial
            total = total + self.diagram(nd, bot, top).scale(coeff)
        return total

    def element(self, pe: PositionedElement, bot, top) -> TensorWord:
        total = TensorWord.zero(bot, top)
        for nd, coeff in pe.element.terms:
            total = total + self.diagram(nd, bot, top).scale(coeff)
        return total

    def current(self, nd: NormalDiagram, bot, top) -> PositionedElement:
        return PositionedElement(
            image_object(self.glued, *bot),
            image_object(self.glued, *top),
            SkeinElement.single(nd),
        )

    def diagram(self, nd: NormalDiagram, bot, top) -> TensorWord:
        # the same diagram recurs across remainder terms, so peel it once;
        # re-entering a key mid-computation would mean the peel is circular
        key = (nd, bot, top)
        if key in self.cache:
            return self.cache[key]
        if key in self.in_progress:
            raise BoundExceededError("the decomposition revisits a diagram")
        self.in_progress.add(key)
        try:
            word = self._peel_one(nd, bot, top)
        finally:
            self.in_progress.discard(key)
        self.cache[key] = word
        return word

    def _peel_one(self, nd: NormalDiagram, bot, top) -> TensorWord:
        if any(nd.gate_counts):
            stripped, cores = _strip_cores(nd)
            if cores:
                return self.with_cores(stripped, cores, bot, top)
            return self.peel_wrap(nd, bot, top)
        mixed = self.mixed_pairs(nd, bot, top)
        if mixed:
            return self.peel_junction(nd, mixed, bot, top)
        return self.split(nd, bot, top)

    # -- closed band curves --------------------------------------------------

    def with_cores(self, nd: NormalDiagram, cores: int, bot, top) -> TensorWord:
        one = core_word(self.glued, *bot)
        prefix = one
        for _ in range(cores - 1):
            prefix = prefix.compose(one)
        self.spend(cores * 5)
        rest = self.element(self.current(nd, bot, top), bot, top)
        return prefix.compose(rest)

    # -- band passages ---------------------------------------------------------

    def peel_wrap(self, nd: NormalDiagram, bot, top) -> TensorWord:
        a = CollarObject(((), (HALF,)))
        best = None
        for u, v in nd.matching:
            for g, o in ((u, v), (v, u)):
                if g[0] != "G" or o[0] == "G":
                    continue
                at_top = o[0] == "T"
                # the endpoint's side picks the letter that can reach it
                forward = (o[1] >= len(top[0])) if at_top else (o[1] < len(bot[0]))
                # a matching gate slot lets the letter cancel this passage
                # outright; a forward letter keeps the image single-diagram
                if at_top:
                    match = g[1] == (0 if forward else 1)
                else:
                    match = g[1] == (1 if forward else 0)
                score = (forward, match, o[1])
                if best is None or score > best[0]:
                    best = (score, at_top, o[1], forward)
        assert best, "a gate strand attaches to the boundary once cores are gone"
        _, at_top, index, forward = best
        if at_top:
            return self.peel_top(nd, bot, top, a, index, forward=forward)
        return self.peel_bottom(nd, bot, top, a, index, forward=forward)

    # -- shared peel mechanics ----------------------------------------------

    def peel_top(self, nd, bot, top, a: CollarObject, t_index: int, forward: bool):
        """Split nd as (rest) . letter . bridge, pulling the strand that ends
        at top position t_index back through the letter."""
        m_top, n_top = top
        wrap = a.arity == 2 and bool(a.components[1])
        if forward:
            # the letter lands its strand on the N side
            n_inner = spread(len(n_top) - 1)
            letter = Iota(m_top, a, n_inner)
            landing = act_left_object(a, n_inner)
            slot = len(landing) - 1 if wrap else 0
            local = t_index - len(m_top)
            assert local >= 0, "a forward peel targets an N-side endpoint"
            bridge, undo = _bridge(
                self.glued, m_top, m_top, None, landing, n_top, (slot, local)
            )
        else:
            m_inner = spread(len(m_top) - 1)
            letter = IotaInv(m_inner, a, n_top)
            landing = act_right_object(m_inner, a)
            slot = 0 if wrap else len(landing) - 1
            local = t_index
            assert local < len(m_top), "a reverse peel targets an M-side endpoint"
            bridge, undo = _bridge(
                self.glued, landing, m_top, (slot, local), n_top, n_top, None
            )
        self.spend(2)
        inv_img = letter_image(self.glued, _inverse_letter(letter))
        rest = self.current(nd, bot, top).compose(undo).compose(inv_img)
        word = self.element(rest, bot, letter.bottom_pair())
        return word.compose(TensorWord.from_letters([letter, bridge]))

    def peel_bottom(self, nd, bot, top, a: CollarObject, b_index: int, forward: bool):
        """Split nd as bridge . letter . (rest), feeding the strand that
        starts at bottom position b_index into the letter."""
        m_bot, n_bot = bot
        wrap = a.arity == 2 and bool(a.components[1])
        if forward:
            # the letter takes its strand from the M side
            m_inner = spread(len(m_bot) - 1)
            letter = Iota(m_inner, a, n_bot)
            window = act_right_object(m_inner, a)
            slot = 0 if wrap else len(window) - 1
            local = b_index
            assert local < len(m_bot), "a forward feed starts on the M side"
            bridge, undo = _bridge(
                self.glued, m_bot, window, (local, slot), n_bot, n_bot, None
            )
        else:
            n_inner = spread(len(n_bot) - 1)
            letter = IotaInv(m_bot, a, n_inner)
            window = act_left_object(a, n_inner)
            slot = len(window) - 1 if wrap else 0
            local = b_index - len(m_bot)
            assert local >= 0, "a reverse feed starts on the N side"
            bridge, undo = _bridge(
                self.glued, m_bot, m_bot, None, n_bot, window, (local, slot)
            )
        self.spend(2)
        inv_img = letter_image(self.glued, _inverse_letter(letter))
        rest = inv_img.compose(undo).compose(self.current(nd, bot, top))
        word = self.element(rest, letter.top_pair(), top)
        return TensorWord.from_letters([bridge, letter]).compose(word)

    # -- junction crossings ---------------------------------------------------

    def mixed_pairs(self, nd: NormalDiagram, bot, top):
        m_bot, n_bot = bot
        m_top, n_top = top

        def side(token):
            cut = len(m_bot) if token[0] == "B" else len(m_top)
            return "M" if token[1] < cut else "N"

        return [(u, v) for u, v in nd.matching if side(u) != side(v)]

    def peel_junction(self, nd: NormalDiagram, mixed, bot, top) -> TensorWord:
        m_bot, n_bot = bot
        m_top, n_top = top
        a = CollarObject(((HALF,),) if self.glued.arity == 1 else ((HALF,), ()))
        pick = max(mixed, key=lambda p: (max(_tier(t) for t in p), p))
        kinds = sorted(t[0] for t in pick)
        if kinds == ["B", "B"]:
            b_index = min(t[1] for t in pick)  # the M-side leg
            return self.peel_bottom(nd, bot, top, a, b_index, forward=True)
        tok = max((t for t in pick if t[0] == "T"), key=lambda t: t[1])
        if tok[1] >= len(m_top):
            return self.peel_top(nd, bot, top, a, tok[1], forward=True)
        return self.peel_top(nd, bot, top, a, tok[1], forward=False)

    # -- the gate-free, junction-free terminal --------------------------------

    def split(self, nd: NormalDiagram, bot, top) -> TensorWord:
        m_bot, n_bot = bot
        m_top, n_top = top
        f_pairs, g_pairs = [], []
        for u, v in nd.matching:
            su, lu = self.local_token(u, len(m_bot), len(m_top))
            sv, lv = self.local_token(v, len(m_bot), len(m_top))
            assert su == sv, "mixed pairs were peeled before splitting"
            (f_pairs if su == "M" else g_pairs).append((lu, lv))
        f_nd = NormalDiagram.from_pairs(disk(), len(m_bot), len(m_top), (), f_pairs)
        g_nd = NormalDiagram.from_pairs(disk(), len(n_bot), len(n_top), (), g_pairs)
        self.spend(1)
        letter = Pair(
            PositionedElement(m_bot, m_top, SkeinElement.single(f_nd)),
            PositionedElement(n_bot, n_top, SkeinElement.single(g_nd)),
        )
        return TensorWord.from_letters([letter])

    def local_token(self, token, m_b: int, m_t: int):
        kind, idx = token
        cut = m_b if kind == "B" else m_t
        if idx < cut:
            return ("M", (kind, idx))
        return ("N", (kind, idx - cut))


def _bridge(glued: GluedSurface, f_bot, f_top, f_move, g_bot, g_top, g_move):
    """A Pair routing one endpoint per side, and the image of its inverse.

    Each move is (from, to) in 0-based local positions, or None for an
    identity component.  The routing is a resolved braid, undone exactly by
    the opposite braid.
    """

    def build(bot_pts, top_pts, move):
        if move is None:
            fwd = SkeinElement.identity(disk(), len(bot_pts))
            return PositionedElement(bot_pts, top_pts, fwd), fwd
        frm, to = move
        fwd = shuttle(len(bot_pts), frm + 1, to + 1)
        rev = shuttle(len(bot_pts), to + 1, frm + 1, -1)
        return PositionedElement(bot_pts, top_pts, fwd), rev

    f_pe, f_rev = build(f_bot, f_top, f_move)
    g_pe, g_rev = build(g_bot, g_top, g_move)
    bridge = Pair(f_pe, g_pe)
    undo = _pair_image(
        glued,
        Pair(
            PositionedElement(f_pe.top, f_pe.bottom, f_rev),
            PositionedElement(g_pe.top, g_pe.bottom, g_rev),
        ),
    )
    return bridge, undo


def core_word(glued: GluedSurface, m, n) -> TensorWord:
    """A word whose image is the band's closed curve beside identities.

    The curve is traced by an auxiliary strand: born in a cup at the right
    end of the N side, carried backwards through the band, shuttled across
    the M spectators, returned over the junction, and closed with a cap
    that travels back across the N spectators.
    """
    if glued.arity != 2:
        raise ValueError("only the two-component gluing has a band")
    m, n = tuple(m), tuple(n)
    a_wrap = CollarObject(((), (HALF,)))
    a_junc = CollarObject(((HALF,), ()))
    n_mid = spread(len(n) + 1)
    born = act_left_object(a_wrap, n_mid)
    cup = Pair(
        PositionedElement.identity(disk(), m),
        PositionedElement(n, born, _cup_right(len(n))),
    )
    ride = IotaInv(m, a_wrap, n_mid)
    left_at = act_right_object(m, a_wrap)
    right_at = act_right_object(m, a_junc)
    bridge = Pair(
        PositionedElement(left_at, right_at, shuttle(len(m) + 1, 1, len(m) + 1, _BRIDGE_SIGN)),
        PositionedElement.identity(disk(), n_mid),
    )
    back = Iota(m, a_junc, n_mid)
    landed = act_left_object(a_junc, n_mid)
    cap = Pair(
        PositionedElement.identity(disk(), m),
        PositionedElement(landed, n, _long_cap(len(n))),
    )
    # the auxiliary strand closes with one curl; undo its framing factor
    return TensorWord.from_letters(
        [cup, ride, bridge, back, cap], coeff=LaurentPoly.monomial(-1, 3)
    )


def _cup_right(s: int) -> SkeinElement:
    """s strands straight, then a cup born at the two rightmost points."""
    pairs = [(("B", i), ("T", i)) for i in range(s)]
    pairs.append((("T", s), ("T", s + 1)))
    return SkeinElement.single(
        NormalDiagram.from_pairs(disk(), s, s + 2, (), pairs)
    )


def _long_cap(s: int) -> SkeinElement:
    """The leftmost strand crosses s spectators and caps with the rightmost."""
    carry = shuttle(s + 2, 1, s + 1, _CAP_SIGN)
    pairs = [(("B", s), ("B", s + 1))]
    pairs += [(("B", i), ("T", i)) for i in range(s)]
    close = SkeinElement.single(
        NormalDiagram.from_pairs(disk(), s + 2, s, (), pairs)
    )
    return stack(carry, close)


_BRIDGE_SIGN = 1
_CAP_SIGN = 1


# the peeler may spend many intermediate letters per letter it keeps, so the
# termination valve is a multiple of the requested word-length bound
_SPEND_FACTOR = 64


def decompose_at_interface(
    glued: GluedSurface, pe: PositionedElement, bound: int = 64
) -> TensorWord:
    """The canonical balanced word evaluating to the given element.

    ``bound`` caps the letter count of every string in the result; the
    search itself is allowed ``_SPEND_FACTOR`` times that many letters
    before giving up, so a genuine cycle still raises rather than spinning.
    """
    if pe.surface != glued.surface:
        raise ValueError("the element does not live on this glued surface")
    word = _Peeler(glued, bound * _SPEND_FACTOR).run(pe)
    word = _collapse_pairs(word)
    if word.max_length() > bound:
        raise BoundExceededError("the decomposition exceeded the letter bound")
    return TensorWord(word.bottom, word.top, word.terms, canonical=True)


def _collapse_pairs(word: TensorWord) -> TensorWord:
    terms = []
    for coeff, letters in word.terms:
        out: list = []
        for letter in letters:
            if out and isinstance(letter, Pair) and isinstance(out[-1], Pair):
                prev = out.pop()
                out.append(Pair(prev.f.compose(letter.f), prev.g.compose(letter.g)))
            else:
                out.append(letter)
        terms.append((coeff, tuple(out)))
    merged: dict[tuple, LaurentPoly] = {}
    order = []
    for coeff, letters in terms:
        if letters not in merged:
            merged[letters] = LaurentPoly.zero()
            order.append(letters)
        merged[letters] = merged[letters] + coeff
    kept = tuple((merged[ls], ls) for ls in order if merged[ls])
    return TensorWord(word.bottom, word.top, kept)


def normal_form(glued: GluedSurface, word: TensorWord, bound: int = 64) -> TensorWord:
    """Evaluate, then decompose: the canonical representative of a word."""
    return decompose_at_interface(glued, image_word(glued, word), bound)


def words_equal(
    glued: GluedSurface, w1: TensorWord, w2: TensorWord, bound: int = 64
) -> bool | None:
    """True/False when both normal forms fit the bound, None otherwise."""
    try:
        n1 = normal_form(glued, w1, bound)
        n2 = normal_form(glued, w2, bound)
    except BoundExceededError:
        return None
    return (n1.bottom, n1.top, n1.terms) == (n2.bottom, n2.top, n2.terms)


# ---------------------------------------------------------------------------
# verification harness


def _gluing_name(glued: GluedSurface) -> str:
    return "disk" if glued.arity == 1 else "annulus"


def _endpoint_sizes(rng: random.Random, total_cap: int = 4):
    while True:
        sizes = tuple(rng.randrange(3) for _ in range(4))
        if sum(sizes) % 2 == 0 and sum(sizes) <= total_cap:
            return sizes


def sample_basis_element(rng: random.Random, glued: GluedSurface) -> PositionedElement:
    """A random basis diagram of the glued surface, placed at image positions."""
    bm, bn, tm, tn = _endpoint_sizes(rng)
    wind = 2 if glued.arity == 2 else 0
    basis = enumerate_basis(glued.surface, bm + bn, tm + tn, wind)
    nd = basis[rng.randrange(len(basis))]
    return PositionedElement(
        image_object(glued, spread(bm), spread(bn)),
        image_object(glued, spread(tm), spread(tn)),
        SkeinElement.single(nd),
    )


def sample_tensor_word(
    rng: random.Random, glued: GluedSurface, max_moves: int = 3
) -> TensorWord:
    """A random well-typed balanced word with small objects."""
    pm = spread(rng.randrange(3))
    pn = spread(rng.randrange(3))
    letters: list = []
    for _ in range(rng.randrange(1, max_moves + 1)):
        kind = rng.choice(("pair", "pair", "iota", "iota-inv"))
        if kind == "pair":
            km = len(pm) + rng.choice((-2, 0, 0, 2))
            kn = len(pn) + rng.choice((-2, 0, 0, 2))
            km += 2 if km < 0 else 0
            kn += 2 if kn < 0 else 0
            f = sample_host_morphism(rng, len(pm), km).reposition(pm, spread(km))
            g = sample_host_morphism(rng, len(pn), kn).reposition(pn, spread(kn))
            letters.append(Pair(f, g))
        else:
            a = sample_collar_object(rng, glued.arity)
            pts = sum(len(c) for c in a.components)
            if kind == "iota":
                if len(pm) < pts:
                    continue
                m = spread(len(pm) - pts)
                n = spread(len(pn))
                landing = act_right_object(m, a)
                letters.append(
                    Pair(
                        PositionedElement.translation(disk(), pm, landing),
                        PositionedElement.translation(disk(), pn, n),
                    )
                )
                letters.append(Iota(m, a, n))
            else:
                if len(pn) < pts:
                    continue
                m = spread(len(pm))
                n = spread(len(pn) - pts)
                landing = act_left_object(a, n)
                letters.append(
                    Pair(
                        PositionedElement.translation(disk(), pm, m),
                        PositionedElement.translation(disk(), pn, landing),
                    )
                )
                letters.append(IotaInv(m, a, n))
        pm, pn = letters[-1].top_pair()
    if not letters:
        return TensorWord.identity_word(pm, pn)
    word = TensorWord.from_letters(letters)
    return word.scale(LaurentPoly.monomial(1, rng.randrange(-2, 3)))


FAITHFULNESS_MOVES = ("noncrossing", "middle", "crossing-slide", "merge")


def faithfulness_instance(rng: random.Random, glued: GluedSurface, move: str):
    """A pair of words related by one faithfulness move of the equivalence.

    noncrossing: two presentations of a diagram that stays clear of the
    interface.  middle: a collar morphism carried through the interface
    letter.  crossing-slide: host morphisms commuted past the interface
    letter.  merge: two interface passages fused into one.
    """
    arity = glued.arity
    if move == "noncrossing":
        return relation_instances(rng, arity, "functionality")
    if move == "middle":
        return relation_instances(rng, arity, "naturality")
    if move == "merge":
        return relation_instances(rng, arity, "pentagon")
    if move == "crossing-slide":
        m = spread(rng.randrange(3))
        n = spread(rng.randrange(3))
        a = sample_collar_object(rng, arity)
        m2 = spread(len(m) + 2 * rng.randrange(2))
        f = sample_host_morphism(rng, len(m), len(m2)).reposition(m, m2)
        g = sample_host_morphism(rng, len(n), len(n))
        u = CollarMorphism.identity(a)
        lhs = TensorWord.from_letters(
            [Pair(act_right_morphism(f, u), g), Iota(m2, a, n)]
        )
        rhs = TensorWord.from_letters(
            [Iota(m, a, n), Pair(f, act_left_morphism(u, g))]
        )
        return lhs, rhs
    raise ValueError(f"unknown faithfulness move {move!r}")


def verify_roundtrip(
    glued: GluedSurface, sample_size: int = 50, bound: int = 64, seed: int = 0
) -> dict:
    """Round-trip report: diagrams, words, and the four faithfulness moves."""
    rng = random.Random(seed)
    failures = []
    for k in range(sample_size):
        u = sample_basis_element(rng, glued)
        try:
            back = image_word(glued, decompose_at_interface(glued, u, bound))
            ok = (back.bottom, back.top, back.element) == (u.bottom, u.top, u.element)
        except BoundExceededError:
            ok = False
        if not ok:
            failures.append({"kind": "diagram", "sample": k})
    for k in range(sample_size):
        w0 = sample_tensor_word(rng, glued)
        try:
            n1 = normal_form(glued, w0, bound)
            n2 = normal_form(glued, n1, bound)
            ok = (n1.bottom, n1.top, n1.terms) == (n2.bottom, n2.top, n2.terms)
        except BoundExceededError:
            ok = False
        if not ok:
            failures.append({"kind": "word", "sample": k})
    per_move = max(1, sample_size // 10)
    for move in FAITHFULNESS_MOVES:
        for k in range(per_move):
            lhs, rhs = faithfulness_instance(rng, glued, move)
            if words_equal(glued, lhs, rhs, bound) is not True:
                failures.append({"kind": move, "sample": k})
    return {
        "gluing": _gluing_name(glued),
        "samples": sample_size,
        "failures": failures,
    }


def translation_witness(glued: GluedSurface, x: Fraction) -> PositionedElement:
    """An invertible ribbon carrying a point into the left image window."""
    if not Fraction(0) < x < Fraction(1):
        raise ValueError("witness points live strictly inside the interval")
    return PositionedElement.translation(
        glued.surface, (x,), (glue_left(middle(x)),)
    )


def equivalence_report(
    glued: GluedSurface,
    pairs=None,
    bound: int = 1,
    word_bound: int = 64,
    seed: int = 0,
    witness_count: int = 8,
) -> dict:
    """Truncated Hom dimensions both ways, plus translation witnesses."""
    rng = random.Random(seed)
    if pairs is None:
        pairs = ((0, 0, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (1, 1, 1, 1))
    wind = bound if glued.arity == 2 else 0
    dims = []
    failures = []
    for bm, bn, tm, tn in pairs:
        bot = image_object(glued, spread(bm), spread(bn))
        top = image_object(glued, spread(tm), spread(tn))
        forms = set()
        basis = enumerate_basis(glued.surface, bm + bn, tm + tn, wind)
        for nd in basis:
            pe = PositionedElement(bot, top, SkeinElement.single(nd))
            try:
                word = decompose_at_interface(glued, pe, word_bound)
            except BoundExceededError:
                forms = None
                break
            forms.add(json.dumps(word_to_json_obj(word), sort_keys=True))
        lhs = len(basis)
        rhs = None if forms is None else len(forms)
        dims.append({"objects": [bm, bn, tm, tn], "lhs": lhs, "rhs": rhs})
        if rhs != lhs:
            failures.append({"kind": "dimension", "objects": [bm, bn, tm, tn]})
    witnesses = []
    for _ in range(witness_count):
        x = Fraction(rng.randrange(1, 64), 64)
        ribbon = translation_witness(glued, x)
        inverse = PositionedElement.translation(glued.surface, ribbon.top, ribbon.bottom)
        closed = ribbon.compose(inverse)
        ok = closed == PositionedElement.identity(glued.surface, ribbon.bottom)
        witnesses.append({"point": str(x), "target": str(ribbon.top[0]), "invertible": ok})
        if not ok:
            failures.append({"kind": "witness", "point": str(x)})
    return {
        "gluing": _gluing_name(glued),
        "samples": len(witnesses),
        "failures": failures,
        "dims": dims,
        "witnesses": witnesses,
    }
