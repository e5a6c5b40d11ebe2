"""Skein categories of punctured surfaces presented as a disk with handles.

Surface presentation
--------------------
A surface is a square (the base disk) with 2 * handle_count marked gate
intervals ("slots") on its left edge, slot 0 topmost, each handle being an
untwisted band joining its two slots.  Walking the boundary of the square
counterclockwise from the bottom-left corner therefore visits: the bottom
edge left-to-right, the right edge, the top edge right-to-left, and then
the gate slots in increasing slot order.

Diagram words
-------------
A diagram between objects (points on the bottom/top edges) is swept
bottom-to-top and recorded as a word of slices: the square-local alphabet
of module diagram (Cup/Cap/Cross) plus gate events Thru(slot, dir), where
dir=+1 means a strand emerges from the gate into the square and dir=-1
means a strand leaves through it.  Gate strands always appear or vanish at
position 1, next to the left edge.  Because each gate sits at a fixed
height on the left edge, a word is realisable exactly when its gate events
are grouped by slot in descending order (slot 2h-1 first); this grouping
is enforced at construction.

Crossing points along a gate are numbered 1.. in sweep order.  The band of
a handle identifies crossing j at one end with crossing k+1-j at the other
end (k strands through the handle); traversing the band reverses the order
seen from the square.

Normal form
-----------
Resolving all crossings and deleting contractible circles (factor
-q^2 - q^-2 each) leaves multicurves recorded by pure boundary data: how
many strands cross each gate plus a planar matching of all boundary tokens
(bottom points, top points, gate crossings) in the cyclic order above.
Strands entering and immediately re-exiting the same gate are pulled off
the handle (a bigon with the gate interval); after that reduction no
matching pair joins two crossings of one gate, and every closed curve
through a handle is essential.
"""

from __future__ import annotations

import bisect
import json
import re
from dataclasses import dataclass, replace
from typing import Iterator

from skeincat.diagram import Cap, Cross, Cup, ParseError
from skeincat.laurent import DELTA, LaurentPoly


class NonOrientableError(ValueError):
    """Raised for gluing data describing a non-orientable surface."""


class StateLimitError(RuntimeError):
    """Raised when a resolution would materialise more states than allowed."""


@dataclass(frozen=True)
class Surface:
    """A disk with untwisted handles; handles[h] = (end0 slot, end1 slot)."""

    handles: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.handles:
            if a == b:
                raise ValueError(f"handle ends must be distinct slots, got ({a}, {b})")
            seen.update((a, b))
        n = 2 * len(self.handles)
        if seen != set(range(n)):
            raise ValueError(f"handle ends must use slots 0..{n - 1} exactly once")

    @property
    def handle_count(self) -> int:
        return len(self.handles)

    @property
    def slot_count(self) -> int:
        return 2 * len(self.handles)

    def handle_of_slot(self, slot: int) -> int:
        for h, (a, b) in enumerate(self.handles):
            if slot in (a, b):
                return h
        raise ValueError(f"no such gate slot {slot}")

    def partner_slot(self, slot: int) -> int:
        a, b = self.handles[self.handle_of_slot(slot)]
        return b if slot == a else a

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.handle_count

    @property
    def boundary_count(self) -> int:
        """Orbits of the boundary walk: after the arc following slot i, the
        walk runs through the band of slot i+1 and continues after its
        partner slot."""
        n = self.slot_count
        if n == 0:
            return 1
        nxt = {i: self.partner_slot((i + 1) % n) for i in range(n)}
        seen: set[int] = set()
        orbits = 0
        for start in range(n):
            if start in seen:
                continue
            orbits += 1
            i = start
            while i not in seen:
                seen.add(i)
                i = nxt[i]
        return orbits

    @property
    def genus(self) -> int:
        # chi = 2 - 2g - b for a compact orientable surface with boundary
        chi = self.euler_characteristic
        b = self.boundary_count
        assert (2 - chi - b) % 2 == 0
        return (2 - chi - b) // 2

    def to_json_obj(self) -> dict:
        return {
            "handles": [{"ends": [a, b], "twisted": False} for a, b in self.handles],
            "boundary_slots": self.slot_count,
        }

    @staticmethod
    def from_json_obj(data: dict) -> Surface:
        handles = []
        for h in data.get("handles", []):
            if h.get("twisted", False):
                raise NonOrientableError(
                    "twisted handle pairings describe non-orientable surfaces, "
                    "which are not supported"
                )
            a, b = h["ends"]
            handles.append((int(a), int(b)))
        surf = Surface(tuple(handles))
        declared = data.get("boundary_slots", surf.slot_count)
        if declared != surf.slot_count:
            raise ValueError(
                f"boundary_slots is {declared} but the handles use {surf.slot_count} slots"
            )
        return surf


def disk() -> Surface:
    return Surface(())


def annulus() -> Surface:
    return Surface(((0, 1),))


def punctured_torus() -> Surface:
    # two handles with interleaved slots: their cores meet once
    return Surface(((0, 2), (1, 3)))


def four_punctured_sphere() -> Surface:
    # three handles attached side by side: a disk with three holes
    return Surface(((0, 1), (2, 3), (4, 5)))


@dataclass(frozen=True)
class Thru:
    """A gate event: dir=+1 emerges into the square, dir=-1 leaves it."""

    slot: int
    dir: int
    position: int = 1

    def __post_init__(self):
        if self.dir not in (1, -1):
            raise ValueError(f"gate direction must be +1 or -1, got {self.dir!r}")
        if self.position != 1:
            raise ValueError("gate strands enter and leave at position 1")

    @property
    def consumed(self) -> int:
        return 0 if self.dir == 1 else 1

    @property
    def produced(self) -> int:
        return 1 if self.dir == 1 else 0

    def token(self) -> str:
        return f"thru@{self.slot}:{'in' if self.dir == 1 else 'out'}"


@dataclass(frozen=True)
class SurfaceWord:
    """A diagram word on a surface; see the module docstring for validity."""

    surface: Surface
    source_count: int
    slices: tuple = ()

    def __post_init__(self):
        if self.source_count < 0:
            raise ValueError("source count must be non-negative")
        self.widths()
        last_slot = None
        for k, s in enumerate(self.slices):
            if isinstance(s, Thru):
                if not 0 <= s.slot < self.surface.slot_count:
                    raise ValueError(f"slice {k}: no gate slot {s.slot} on this surface")
                if last_slot is not None and s.slot > last_slot:
                    raise ValueError(
                        f"slice {k}: gate events must be grouped by descending slot "
                        f"(slot {s.slot} after slot {last_slot})"
                    )
                last_slot = s.slot

    def widths(self) -> list[int]:
        w = self.source_count
        out = [w]
        for k, s in enumerate(self.slices):
            if s.position < 1:
                raise ValueError(f"slice {k} ({s.token()}): position must be >= 1")
            if s.consumed == 0:
                if s.position > w + 1:
                    raise ValueError(
                        f"slice {k} ({s.token()}): insertion position {s.position} "
                        f"exceeds width {w} + 1"
                    )
            elif s.position + s.consumed - 1 > w:
                raise ValueError(
                    f"slice {k} ({s.token()}): needs strands up to position "
                    f"{s.position + s.consumed - 1}, width is {w}"
                )
            w = w - s.consumed + s.produced
            out.append(w)
        return out

    @property
    def target_count(self) -> int:
        return self.widths()[-1]

    def with_slices(self, slices) -> SurfaceWord:
        return SurfaceWord(self.surface, self.source_count, tuple(slices))

    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if isinstance(s, Cross))

    def gate_counts(self) -> tuple[int, ...]:
        counts = [0] * self.surface.slot_count
        for s in self.slices:
            if isinstance(s, Thru):
                counts[s.slot] += 1
        return tuple(counts)


# ---------------------------------------------------------------------------
# boundary tokens and normal diagrams

# A token is ("B", i) for bottom point i, ("T", j) for top point j, or
# ("G", slot, idx) for gate crossing idx (1-based, sweep order) at a slot.


def token_cycle(bottom: int, top: int, gate_counts: tuple[int, ...]) -> list[tuple]:
    """All boundary tokens in counterclockwise order from the bottom-left corner."""
    cyc: list[tuple] = [("B", i) for i in range(bottom)]
    cyc += [("T", j) for j in range(top - 1, -1, -1)]
    for slot, k in enumerate(gate_counts):
        cyc += [("G", slot, idx) for idx in range(k, 0, -1)]
    return cyc


def _is_planar_cycle(cycle: list[tuple], pairs) -> bool:
    partner: dict[tuple, tuple] = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    stack: list[tuple] = []
    for t in cycle:
        if stack and stack[-1] == partner.get(t):
            stack.pop()
        else:
            stack.append(t)
    return not stack


@dataclass(frozen=True)
class NormalDiagram:
    """A crossing-free multicurve recorded by boundary data alone."""

    surface: Surface
    bottom: int
    top: int
    gate_counts: tuple[int, ...]
    matching: tuple[tuple[tuple, tuple], ...]

    def __post_init__(self):
        if len(self.gate_counts) != self.surface.slot_count:
            raise ValueError("one gate count per slot is required")
        for slot, k in enumerate(self.gate_counts):
            partner = self.surface.partner_slot(slot)
            if k != self.gate_counts[partner]:
                raise ValueError(
                    f"gate slots {slot} and {partner} share a band but cross "
                    f"{k} vs {self.gate_counts[partner]} strands"
                )
        cyc = token_cycle(self.bottom, self.top, self.gate_counts)
        flat = [t for pair in self.matching for t in pair]
        if sorted(flat) != sorted(cyc):
            raise ValueError("matching must cover every boundary token exactly once")
        for a, b in self.matching:
            if a[0] == "G" and b[0] == "G" and a[1] == b[1]:
                raise ValueError(
                    f"pair {a}-{b} re-enters its own gate; reduce it first"
                )
        if list(self.matching) != sorted(self.matching):
            raise ValueError("matching pairs must be sorted")
        assert _is_planar_cycle(cyc, self.matching), "non-planar boundary matching"

    @staticmethod
    def from_pairs(surface, bottom, top, gate_counts, pairs) -> NormalDiagram:
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        return NormalDiagram(surface, bottom, top, tuple(gate_counts), norm)

    @staticmethod
    def empty(surface: Surface) -> NormalDiagram:
        return NormalDiagram(surface, 0, 0, (0,) * surface.slot_count, ())

    @staticmethod
    def identity(surface: Surface, n: int) -> NormalDiagram:
        pairs = [(("B", i), ("T", i)) for i in range(n)]
        return NormalDiagram.from_pairs(surface, n, n, (0,) * surface.slot_count, pairs)

    def sort_key(self):
        return (self.bottom, self.top, self.gate_counts, self.matching)

    def __hash__(self):
        # diagrams are dict keys throughout; hash the fields once
        try:
            return self._hash
        except AttributeError:
            h = hash(
                (self.surface, self.bottom, self.top, self.gate_counts, self.matching)
            )
            object.__setattr__(self, "_hash", h)
            return h


def reduce_gate_returns(surface, pairs, gate_counts, picker=None):
    """Pull strands off handles they enter and immediately re-exit.

    `pairs` is a set of frozensets of tokens; returns (pairs, gate_counts,
    circles) with every same-gate return removed.  A return at one gate end
    retracts through the band, so four gate crossings vanish per step; if
    the retraction closes a curve entirely, it was contractible and counts
    as a circle.  `picker` chooses among candidate returns (used by the
    confluence tests); the default takes the lexicographically first.
    """
    pairs = {frozenset(p) for p in pairs}
    gate_counts = list(gate_counts)
    circles = 0
    while True:
        candidates = []
        for p in pairs:
            a, b = sorted(p)
            if a[0] == "G" and b[0] == "G" and a[1] == b[1] and abs(a[2] - b[2]) == 1:
                candidates.append((a, b))
        if not candidates:
            break
        candidates.sort()
        a, b = candidates[0] if picker is None else picker(candidates)
        slot = a[1]
        other = surface.partner_slot(slot)
        k = gate_counts[slot]
        i = min(a[2], b[2])
        u = ("G", other, k - i)      # band partner of crossing i+1
        v = ("G", other, k + 1 - i)  # band partner of crossing i
        pairs.remove(frozenset((a, b)))
        pair_u = next(p for p in pairs if u in p)
        if v in pair_u:
            pairs.remove(pair_u)
            circles += 1
        else:
            pair_v = next(p for p in pairs if v in p)
            pairs.remove(pair_u)
            pairs.remove(pair_v)
            (end_u,) = pair_u - {u}
            (end_v,) = pair_v - {v}
            pairs.add(frozenset((end_u, end_v)))

        def renumber(tok):
            if tok[0] != "G":
                return tok
            _, s, idx = tok
            if s == slot and idx > i + 1:
                return ("G", s, idx - 2)
            if s == other and idx > k + 1 - i:
                return ("G", s, idx - 2)
            return tok

        pairs = {frozenset(renumber(t) for t in p) for p in pairs}
        gate_counts[slot] -= 2
        gate_counts[other] -= 2
    return pairs, tuple(gate_counts), circles


# ---------------------------------------------------------------------------
# resolution: sweep with collected partial states

# live-strand entries: ("tok", token) anchored to a boundary token, or
# ("peer", j) linked to the live strand currently at 0-based index j.


def _peer_insert(live: list, at: int, count: int):
    """Shift peer indices when `count` entries are inserted at index `at`."""
    for idx, entry in enumerate(live):
        if entry[0] == "peer" and entry[1] >= at:
            live[idx] = ("peer", entry[1] + count)


def _peer_remove(live: list, removed: list[int]):
    removed = sorted(removed)
    for idx, entry in enumerate(live):
        if entry[0] == "peer":
            j = entry[1]
            shift = sum(1 for r in removed if r < j)
            live[idx] = ("peer", j - shift)


def _close_strands(live: list, i: int, j: int, done: set) -> int:
    """Connect live strands i and j (about to be removed); returns circles."""
    a, b = live[i], live[j]
    if a[0] == "tok" and b[0] == "tok":
        done.add(frozenset((a[1], b[1])))
        return 0
    if a[0] == "tok":
        live[b[1]] = a
        return 0
    if b[0] == "tok":
        live[a[1]] = b
        return 0
    if a[1] == j:  # the two strands are each other's peers: a closed loop
        return 1
    live[a[1]] = ("peer", b[1])
    live[b[1]] = ("peer", a[1])
    return 0


def _state_key(gate_counts, live, done):
    return (tuple(gate_counts), tuple(live), frozenset(done))


def resolve(word: SurfaceWord, max_states: int | None = None) -> "SkeinElement":
    """Expand crossings, drop contractible circles at delta each, normalise.

    Partial states are collected after every slice (like terms merge), so
    the frontier stays small even when 2^crossings is large; `max_states`
    caps the total number of branch states ever materialised.
    """
    counts = word.gate_counts()
    for slot, k in enumerate(counts):
        partner = word.surface.partner_slot(slot)
        if k != counts[partner]:
            raise ValueError(
                f"gate slots {slot} and {partner} share a band but the word "
                f"crosses them {k} and {counts[partner]} times; strands cannot "
                f"end inside a handle"
            )
    bottom = word.source_count
    top = word.target_count
    frontier: dict = {}
    init_live = tuple(("tok", ("B", i)) for i in range(bottom))
    frontier[_state_key([0] * word.surface.slot_count, init_live, set())] = (
        LaurentPoly.one()
    )
    materialised = 1

    for s in word.slices:
        new: dict = {}

        def put(key, coeff):
            if key in new:
                new[key] = new[key] + coeff
            else:
                new[key] = coeff

        for (gate_counts, live_t, done_f), coeff in frontier.items():
            gate_counts = list(gate_counts)
            live = list(live_t)
            done = set(done_f)
            p = s.position - 1
            if isinstance(s, Cup):
                _peer_insert(live, p, 2)
                live[p:p] = [("peer", p + 1), ("peer", p)]
                put(_state_key(gate_counts, live, done), coeff)
            elif isinstance(s, Cap):
                circles = _close_strands(live, p, p + 1, done)
                del live[p : p + 2]
                _peer_remove(live, [p, p + 1])
                put(_state_key(gate_counts, live, done), coeff * DELTA**circles)
            elif isinstance(s, Thru):
                if s.dir == 1:
                    gate_counts[s.slot] += 1
                    tok = ("G", s.slot, gate_counts[s.slot])
                    _peer_insert(live, 0, 1)
                    live[0:0] = [("tok", tok)]
                    put(_state_key(gate_counts, live, done), coeff)
                else:
                    gate_counts[s.slot] += 1
                    tok = ("G", s.slot, gate_counts[s.slot])
                    entry = live[0]
                    if entry[0] == "tok":
                        done.add(frozenset((entry[1], tok)))
                    else:
                        live[entry[1]] = ("tok", tok)
                    del live[0]
                    _peer_remove(live, [0])
                    put(_state_key(gate_counts, live, done), coeff)
            elif isinstance(s, Cross):
                # identity smoothing: strands pass straight through
                put(
                    _state_key(gate_counts, live, done),
                    coeff * LaurentPoly.q_power(-s.sign),
                )
                # cup-cap smoothing: join below, reopen above
                live2 = list(live)
                done2 = set(done)
                circles = _close_strands(live2, p, p + 1, done2)
                live2[p] = ("peer", p + 1)
                live2[p + 1] = ("peer", p)
                put(
                    _state_key(gate_counts, live2, done2),
                    coeff * LaurentPoly.q_power(s.sign) * DELTA**circles,
                )
            else:
                raise ValueError(f"unknown slice {s!r}")
        materialised += len(new)
        if max_states is not None and materialised > max_states:
            raise StateLimitError(
                f"resolution materialised more than {max_states} states"
            )
        frontier = {k: v for k, v in new.items() if v}

    items = []
    for (gate_counts, live_t, done_f), coeff in frontier.items():
        done = set(done_f)
        for idx, entry in enumerate(live_t):
            if entry[0] == "tok":
                done.add(frozenset((entry[1], ("T", idx))))
            elif entry[1] > idx:
                done.add(frozenset((("T", idx), ("T", entry[1]))))
        pairs, counts, circles = reduce_gate_returns(word.surface, done, gate_counts)
        nd = NormalDiagram.from_pairs(word.surface, bottom, top, counts, pairs)
        items.append((nd, coeff * DELTA**circles))
    return SkeinElement.from_terms(word.surface, bottom, top, items)


def normalize_word(word: SurfaceWord) -> "SkeinElement":
    """Normal form of a crossing-free word (circles cost delta each)."""
    if word.crossing_count():
        raise ValueError("normalisation expects a crossing-free word; resolve first")
    return resolve(word)


# ---------------------------------------------------------------------------
# linear combinations


@dataclass(frozen=True)
class SkeinElement:
    """A Laurent-linear combination of normal diagrams with fixed endpoints."""

    surface: Surface
    bottom: int
    top: int
    terms: tuple[tuple[NormalDiagram, LaurentPoly], ...]

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.surface, self.bottom, self.top, self.terms))
            object.__setattr__(self, "_hash", h)
            return h

    @staticmethod
    def from_terms(surface, bottom, top, items) -> SkeinElement:
        acc: dict[NormalDiagram, LaurentPoly] = {}
        for nd, coeff in items:
            if nd.surface != surface or nd.bottom != bottom or nd.top != top:
                raise ValueError("term does not fit the element's endpoints")
            acc[nd] = acc.get(nd, LaurentPoly.zero()) + coeff
        kept = tuple(
            sorted(((d, c) for d, c in acc.items() if c), key=lambda dc: dc[0].sort_key())
        )
        return SkeinElement(surface, bottom, top, kept)

    @staticmethod
    def single(nd: NormalDiagram, coeff: LaurentPoly | None = None) -> SkeinElement:
        return SkeinElement.from_terms(
            nd.surface, nd.bottom, nd.top, [(nd, coeff or LaurentPoly.one())]
        )

    @staticmethod
    def zero(surface, bottom, top) -> SkeinElement:
        return SkeinElement(surface, bottom, top, ())

    @staticmethod
    def unit(surface: Surface) -> SkeinElement:
        return SkeinElement.single(NormalDiagram.empty(surface))

    @staticmethod
    def identity(surface: Surface, n: int) -> SkeinElement:
        return SkeinElement.single(NormalDiagram.identity(surface, n))

    def __add__(self, other: SkeinElement) -> SkeinElement:
        if not isinstance(other, SkeinElement):
            return NotImplemented
        if (self.surface, self.bottom, self.top) != (
            other.surface,
            other.bottom,
            other.top,
        ):
            raise ValueError("cannot add skein elements with different endpoints")
        return SkeinElement.from_terms(
            self.surface, self.bottom, self.top, self.terms + other.terms
        )

    def scale(self, coeff: LaurentPoly) -> SkeinElement:
        return SkeinElement.from_terms(
            self.surface, self.bottom, self.top, ((d, coeff * c) for d, c in self.terms)
        )

    def coefficient(self, nd: NormalDiagram) -> LaurentPoly:
        for d, c in self.terms:
            if d == nd:
                return c
        return LaurentPoly.zero()


# ---------------------------------------------------------------------------
# canonical words for normal diagrams


def canonical_word(nd: NormalDiagram) -> SurfaceWord:
    """Re-emit a normal diagram as a crossing-free word.

    Gate crossings all enter at the bottom of the word (slot-descending, so
    the live strands then read as the boundary cycle: slot 0's tokens in
    ccw order, then slot 1's, ..., then the bottom points).  The square part
    follows: adjacent caps for arcs between live strands, untouched through
    strands, then cups for top-to-top arcs, outermost first.
    """
    slices: list = []
    for slot in range(nd.surface.slot_count - 1, -1, -1):
        for idx in range(1, nd.gate_counts[slot] + 1):
            slices.append(Thru(slot, 1))
    live: list[tuple] = []
    for slot in range(nd.surface.slot_count):
        live += [("G", slot, idx) for idx in range(nd.gate_counts[slot], 0, -1)]
    live += [("B", i) for i in range(nd.bottom)]

    partner: dict[tuple, tuple] = {}
    for a, b in nd.matching:
        partner[a] = b
        partner[b] = a

    # cap phase: innermost live-live arcs are adjacent; repeat until none
    capped = True
    while capped:
        capped = False
        for i in range(len(live) - 1):
            if partner[live[i]] == live[i + 1]:
                slices.append(Cap(i + 1))
                del live[i : i + 2]
                capped = True
                break
    assert all(partner[t][0] == "T" for t in live), "stranded non-through arc"

    # cup phase: top-to-top arcs, outermost first, positions simulated
    present = sorted(partner[t][1] for t in live)
    top_pairs = sorted(
        (min(a[1], b[1]), max(a[1], b[1]))
        for a, b in nd.matching
        if a[0] == "T" and b[0] == "T"
    )
    for lo, hi in top_pairs:
        pos = bisect.bisect_left(present, lo) + 1
        slices.append(Cup(pos))
        bisect.insort(present, lo)
        bisect.insort(present, hi)
    return SurfaceWord(nd.surface, nd.bottom, tuple(slices))


# ---------------------------------------------------------------------------
# stacking composition


def compose_words(w1: SurfaceWord, w2: SurfaceWord) -> SurfaceWord:
    """The word of the stacked diagram (w1 below, w2 above, same surface).

    Strands of both factors share the gates, so gate events are deferred:
    each becomes a parked strand at the left, and all gates are paid off at
    the top of the word in a canonical order.  The order interleaves the
    factors consistently with the band reversal (at a handle's end0 the
    lower factor's strands sit below the upper factor's; at end1 the other
    way round), which is what makes stacking associative.  Parked strands
    of the upper factor walk left over parked strands of the lower factor;
    each walk step is a crossing with the upper factor's sheet on top.
    """
    if w1.surface != w2.surface:
        raise ValueError("cannot stack words on different surfaces")
    if w1.target_count != w2.source_count:
        raise ValueError(
            f"cannot stack: {w1.target_count} output strands vs "
            f"{w2.source_count} input strands"
        )
    surface = w1.surface

    def delivery_key(slot: int, factor: int, seq: int):
        a, b = surface.handles[surface.handle_of_slot(slot)]
        if slot == a:  # end0: lower factor first
            block = 0 if factor == 0 else 1
        else:  # end1: upper factor first
            block = 0 if factor == 1 else 1
        return (surface.slot_count - 1 - slot, block, seq)

    slices: list = []
    parked: list[tuple] = []  # (delivery key, factor) pairs, left to right

    def park(key, factor):
        """Walk the strand at the block's right edge left to its sorted spot."""
        j = len(parked)  # 0-based insertion index; walker sits at position j+1
        while j > 0 and parked[j - 1][0] > key:
            assert parked[j - 1][1] == 0 and factor == 1, "same-sheet walk"
            slices.append(Cross(j, -1))
            j -= 1
        parked.insert(j, (key, factor))

    for factor, word in enumerate((w1, w2)):
        seq = [0] * surface.slot_count
        for s in word.slices:
            if isinstance(s, Thru):
                seq[s.slot] += 1
                key = delivery_key(s.slot, factor, seq[s.slot])
                if s.dir == 1:
                    # strand from the gate: born as a cup, left leg parked
                    slices.append(Cup(len(parked) + 1))
                else:
                    # strand into the gate: the factor's strand at its
                    # position 1 already sits at the block's right edge
                    pass
                park(key, factor)
            else:
                slices.append(replace(s, position=s.position + len(parked)))
    for key, _factor in parked:
        slices.append(Thru(surface.slot_count - 1 - key[0], -1))
    return SurfaceWord(surface, w1.source_count, tuple(slices))


def stack(x: SkeinElement, y: SkeinElement, max_states: int | None = None) -> SkeinElement:
    """Composite of x then y: concatenate diagrams in the thickening and resolve."""
    if x.surface != y.surface:
        raise ValueError("cannot stack elements on different surfaces")
    if x.top != y.bottom:
        raise ValueError(f"cannot stack: {x.top} points vs {y.bottom} points")
    total = SkeinElement.zero(x.surface, x.bottom, y.top)
    for dx, cx in x.terms:
        for dy, cy in y.terms:
            word = compose_words(canonical_word(dx), canonical_word(dy))
            total = total + resolve(word, max_states).scale(cx * cy)
    return total


def skein_product(a: SkeinElement, b: SkeinElement, max_states: int | None = None) -> SkeinElement:
    """Multiplication of the skein algebra End(empty object)."""
    if a.bottom or a.top or b.bottom or b.top:
        raise ValueError("the skein product is defined for closed elements only")
    return stack(a, b, max_states)


def core_curve(surface: Surface, handle: int) -> SkeinElement:
    """The simple closed curve running once through the given handle."""
    a, b = surface.handles[handle]
    counts = [0] * surface.slot_count
    counts[a] = counts[b] = 1
    nd = NormalDiagram.from_pairs(
        surface, 0, 0, counts, [(("G", a, 1), ("G", b, 1))]
    )
    return SkeinElement.single(nd)


# ---------------------------------------------------------------------------
# basis enumeration


def _noncrossing_matchings(seq: list[tuple]) -> Iterator[tuple]:
    if not seq:
        yield ()
        return
    first = seq[0]
    for k in range(1, len(seq), 2):
        mate = seq[k]
        for inner in _noncrossing_matchings(seq[1:k]):
            for outer in _noncrossing_matchings(seq[k + 1 :]):
                yield (tuple(sorted((first, mate))),) + inner + outer


def enumerate_basis(
    surface: Surface, bottom: int, top: int, bound: int
) -> list[NormalDiagram]:
    """All normal diagrams bottom -> top with at most `bound` handle runs.

    `bound` caps the total number of strands through handles (each run
    through a handle crosses both of its gates once).
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    out: list[NormalDiagram] = []

    def runs_assignments(h: int, remaining: int) -> Iterator[list[int]]:
        if h == surface.handle_count:
            yield []
            return
        for k in range(remaining + 1):
            for rest in runs_assignments(h + 1, remaining - k):
                yield [k] + rest

    for runs in runs_assignments(0, bound):
        counts = [0] * surface.slot_count
        for h, k in enumerate(runs):
            a, b = surface.handles[h]
            counts[a] = counts[b] = k
        if (bottom + top + sum(counts)) % 2:
            continue
        cyc = token_cycle(bottom, top, tuple(counts))
        for pairs in _noncrossing_matchings(cyc):
            if any(a[0] == "G" and b[0] == "G" and a[1] == b[1] for a, b in pairs):
                continue
            out.append(NormalDiagram.from_pairs(surface, bottom, top, counts, pairs))
    out.sort(key=lambda nd: nd.sort_key())
    return out


# ---------------------------------------------------------------------------
# text and JSON forms


_THRU_RE = re.compile(r"^thru@(\d+):(in|out)$")


def parse_curve_word(text: str, surface: Surface) -> SurfaceWord:
    """Parse the diagram grammar extended with `thru@slot:in|out` events."""
    from skeincat.diagram import _CROSS_RE, _CUPCAP_RE, _statements

    stmts = list(_statements(text))
    if not stmts:
        raise ParseError("empty input: expected a source strand count", 1, 1)
    head, hline, hcol = stmts[0]
    if not re.fullmatch(r"\d+", head):
        raise ParseError(f"expected a source strand count, got {head!r}", hline, hcol)
    slices: list = []
    for stmt, line, col in stmts[1:]:
        m = _CUPCAP_RE.match(stmt)
        if m:
            slices.append((Cup if m.group(1) == "cup" else Cap)(int(m.group(2))))
            continue
        m = _CROSS_RE.match(stmt)
        if m:
            slices.append(Cross(int(m.group(2)), 1 if m.group(1) == "+" else -1))
            continue
        m = _THRU_RE.match(stmt)
        if m:
            slot = int(m.group(1))
            if slot >= surface.slot_count:
                raise ParseError(
                    f"no gate slot {slot}: the surface has slots "
                    f"0..{surface.slot_count - 1}",
                    line,
                    col,
                )
            slices.append(Thru(slot, 1 if m.group(2) == "in" else -1))
            continue
        raise ParseError(f"unrecognised slice {stmt!r}", line, col)
    return SurfaceWord(surface, int(head), tuple(slices))


def print_curve_word(word: SurfaceWord) -> str:
    return "; ".join([str(word.source_count)] + [s.token() for s in word.slices])


def load_surface(text: str) -> Surface:
    return Surface.from_json_obj(json.loads(text))


def element_to_json_obj(x: SkeinElement) -> dict:
    return {
        "surface": x.surface.to_json_obj(),
        "bottom": x.bottom,
        "top": x.top,
        "terms": [
            {
                "gate_counts": list(d.gate_counts),
                "matching": [[list(a), list(b)] for a, b in d.matching],
                "coefficient": c.to_dict(),
            }
            for d, c in x.terms
        ],
    }
