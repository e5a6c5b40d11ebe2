"""Brute-force Kauffman state sum, kept independent of the evaluation functor.

Every crossing of a closed word is resolved both ways (2^c states).  For
each state the diagram becomes a disjoint union of circles, counted here
with a dedicated union-find over strand segments -- no planar-matching
machinery from the tl module is involved.  A state's weight is q^-1 per
positive crossing smoothed the identity way and q per positive crossing
smoothed the cup-cap way (mirrored for negative crossings); each circle
contributes a factor of -q^2 - q^-2.

This duplicates what evaluate() computes on closed words, on purpose: the
two routes share nothing but the ground ring, so agreement is evidence.
"""

from __future__ import annotations

from itertools import product

from skeincat.diagram import Cap, Coupon, Cross, Cup, SliceWord
from skeincat.laurent import DELTA, LaurentPoly


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def fresh(self) -> int:
        k = len(self.parent)
        self.parent[k] = k
        return k

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        self.parent[self.find(a)] = self.find(b)

    def component_count(self) -> int:
        return sum(1 for k, p in self.parent.items() if self.find(k) == k)


def _loops_of_state(word: SliceWord, choices: dict[int, str]) -> int:
    """Count circles when each crossing is smoothed per choices[slice_index]."""
    uf = _UnionFind()
    cur: list[int] = [uf.fresh() for _ in range(word.source_count)]
    for k, s in enumerate(word.slices):
        p = s.position - 1
        if isinstance(s, Cup):
            a, b = uf.fresh(), uf.fresh()
            uf.union(a, b)
            cur[p:p] = [a, b]
        elif isinstance(s, Cap):
            uf.union(cur[p], cur[p + 1])
            del cur[p : p + 2]
        elif isinstance(s, Cross):
            if choices[k] == "identity":
                pass  # both strands continue straight through
            else:
                uf.union(cur[p], cur[p + 1])
                a, b = uf.fresh(), uf.fresh()
                uf.union(a, b)
                cur[p] = a
                cur[p + 1] = b
        else:
            raise ValueError(f"state sum does not support slice {s.token()}")
    assert not cur, "state sum requires a closed word"
    return uf.component_count()


def state_sum(word: SliceWord) -> LaurentPoly:
    """The bracket of a closed coupon-free word by exhaustive smoothing."""
    if not word.is_closed():
        raise ValueError(
            f"state sum needs a closed word, got {word.source_count}->{word.target_count}"
        )
    if any(isinstance(s, Coupon) for s in word.slices):
        raise ValueError("state sum does not support coupons")
    crossing_indices = [k for k, s in enumerate(word.slices) if isinstance(s, Cross)]
    total = LaurentPoly.zero()
    for assignment in product(("identity", "cupcap"), repeat=len(crossing_indices)):
        choices = dict(zip(crossing_indices, assignment))
        exponent = 0
        for k in crossing_indices:
            sign = word.slices[k].sign
            smoothing = choices[k]
            if smoothing == "identity":
                exponent += -sign
            else:
                exponent += sign
        loops = _loops_of_state(word, choices)
        total = total + LaurentPoly.q_power(exponent) * DELTA**loops
    return total
