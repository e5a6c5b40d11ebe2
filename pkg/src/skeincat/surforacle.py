"""Brute-force resolution of surface diagram words, used to cross-check
the sweeping resolver.

Every one of the 2^c smoothings is materialised outright and its strands
are traced with a union-find over segment ids -- deliberately unrelated to
the position-linked partial states the resolver sweeps with.  The two
routes share only the ground ring, the normal-diagram container and the
gate-return reduction that both feed their finished matchings through.
"""

from __future__ import annotations

from itertools import product

from skeincat.diagram import Cap, Cross, Cup
from skeincat.laurent import DELTA, LaurentPoly
from skeincat.surface import (
    NormalDiagram,
    SkeinElement,
    SurfaceWord,
    Thru,
    reduce_gate_returns,
)


class _Strands:
    """Union-find over strand segment ids, each class collecting the
    boundary tokens attached at its endpoints."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.tokens: dict[int, list] = {}
        self.next_id = 0

    def fresh(self, token=None) -> int:
        i = self.next_id
        self.next_id += 1
        self.parent[i] = i
        self.tokens[i] = [token] if token is not None else []
        return i

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int) -> bool:
        """Join two segments; returns True when they already formed one
        curve, i.e. the join closes a circle."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return True
        self.parent[rb] = ra
        self.tokens[ra] += self.tokens.pop(rb)
        return False

    def attach(self, i: int, token):
        self.tokens[self.find(i)].append(token)


def _trace(word: SurfaceWord, choices: tuple[str, ...]):
    """Strand connectivity of one fully smoothed state.

    Returns (pairs, gate_counts, circles, exponent) where exponent is the
    power of q contributed by the smoothing choices.
    """
    strands = _Strands()
    cur = [strands.fresh(("B", i)) for i in range(word.source_count)]
    gate_counts = [0] * word.surface.slot_count
    circles = 0
    exponent = 0
    ci = 0
    for s in word.slices:
        p = s.position - 1
        if isinstance(s, Cup):
            a = strands.fresh()
            b = strands.fresh()
            strands.union(a, b)
            cur[p:p] = [a, b]
        elif isinstance(s, Cap):
            if strands.union(cur[p], cur[p + 1]):
                circles += 1
            del cur[p : p + 2]
        elif isinstance(s, Thru):
            gate_counts[s.slot] += 1
            token = ("G", s.slot, gate_counts[s.slot])
            if s.dir == 1:
                cur[0:0] = [strands.fresh(token)]
            else:
                strands.attach(cur[0], token)
                del cur[0]
        elif isinstance(s, Cross):
            choice = choices[ci]
            ci += 1
            if choice == "identity":
                exponent -= s.sign
            else:
                exponent += s.sign
                if strands.union(cur[p], cur[p + 1]):
                    circles += 1
                a = strands.fresh()
                b = strands.fresh()
                strands.union(a, b)
                cur[p] = a
                cur[p + 1] = b
        else:
            raise ValueError(f"unknown slice {s!r}")
    for idx, i in enumerate(cur):
        strands.attach(i, ("T", idx))
    pairs = []
    for root, toks in strands.tokens.items():
        assert strands.find(root) == root
        assert len(toks) in (0, 2), f"strand class with {len(toks)} endpoints"
        if toks:
            pairs.append(tuple(toks))
    return pairs, tuple(gate_counts), circles, exponent


def resolve_bruteforce(word: SurfaceWord) -> SkeinElement:
    """Resolve by expanding every smoothing state separately."""
    c = word.crossing_count()
    bottom = word.source_count
    top = word.target_count
    items = []
    for choices in product(("identity", "cupcap"), repeat=c):
        pairs, gate_counts, circles, exponent = _trace(word, choices)
        pairs, gate_counts, extra = reduce_gate_returns(
            word.surface, pairs, gate_counts
        )
        nd = NormalDiagram.from_pairs(word.surface, bottom, top, gate_counts, pairs)
        items.append(
            (nd, LaurentPoly.q_power(exponent) * DELTA ** (circles + extra))
        )
    return SkeinElement.from_terms(word.surface, bottom, top, items)
