"""The Temperley-Lieb category: planar matchings with Laurent coefficients.

Objects are natural numbers (counts of boundary points on the bottom and top
edge of a rectangle).  A basis morphism n -> m is a planar perfect matching
of the n + m boundary points.  Boundary numbering is fixed once and for all:

    bottom points are 0 .. n-1, left to right,
    top points are   n .. n+m-1, left to right.

Planarity is equivalent to the matching being non-crossing in the cyclic
boundary order of the rectangle, i.e. bottom left-to-right followed by top
right-to-left; we check it with the usual parenthesis-nesting stack.

General morphisms are formal sums of matchings with LaurentPoly
coefficients.  Composition glues rectangles top-to-bottom, follows paths,
and pays a factor of delta = -q^2 - q^-2 per closed loop produced.

Crossings do not exist here; they arrive as the two-term combinations
returned by ``braid_generator`` (the fixed smoothing convention: a positive
crossing is q^-1 times the identity smoothing plus q times the cup-cap
smoothing).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from skeincat.laurent import DELTA, LaurentPoly


@dataclass(frozen=True)
class Matching:
    """A planar perfect matching of n bottom + m top boundary points."""

    bottom: int
    top: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n, m = self.bottom, self.top
        if n < 0 or m < 0:
            raise ValueError("point counts must be non-negative")
        if (n + m) % 2 != 0:
            raise ValueError(f"odd total point count {n + m} admits no perfect matching")
        seen: set[int] = set()
        for a, b in self.pairs:
            if not (0 <= a < b < n + m):
                raise ValueError(f"pair ({a}, {b}) out of order or out of range")
            if a in seen or b in seen:
                raise ValueError(f"point repeated in pairs near ({a}, {b})")
            seen.update((a, b))
        if len(seen) != n + m:
            raise ValueError("pairs do not cover every boundary point")
        if list(self.pairs) != sorted(self.pairs):
            raise ValueError("pairs must be sorted")
        if not _is_planar(n, m, self.pairs):
            raise ValueError(f"matching {self.pairs} is not planar")

    def partner(self, p: int) -> int:
        for a, b in self.pairs:
            if a == p:
                return b
            if b == p:
                return a
        raise ValueError(f"no such boundary point {p}")

    @staticmethod
    def from_pairs(bottom: int, top: int, pairs) -> Matching:
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        return Matching(bottom, top, norm)

    @staticmethod
    def identity(n: int) -> Matching:
        return Matching(n, n, tuple((i, n + i) for i in range(n)))

    @staticmethod
    def cup() -> Matching:
        """The birth 0 -> 2."""
        return Matching(0, 2, ((0, 1),))

    @staticmethod
    def cap() -> Matching:
        """The death 2 -> 0."""
        return Matching(2, 0, ((0, 1),))

    @staticmethod
    def hook(n: int, i: int) -> Matching:
        """The n -> n matching joining bottom i-1,i and top i-1,i (1 <= i < n)."""
        if not 1 <= i < n:
            raise ValueError(f"hook position {i} out of range for {n} strands")
        pairs = [(i - 1, i), (n + i - 1, n + i)]
        for j in range(n):
            if j not in (i - 1, i):
                pairs.append((j, n + j))
        return Matching.from_pairs(n, n, pairs)

    def to_pair_list(self) -> list[list[int]]:
        return [[a, b] for a, b in self.pairs]


def _cyclic_order(bottom: int, top: int) -> list[int]:
    """Boundary points in the rectangle's cyclic order, cut at bottom-left."""
    return list(range(bottom)) + list(range(bottom + top - 1, bottom - 1, -1))


def _is_planar(bottom: int, top: int, pairs: tuple[tuple[int, int], ...]) -> bool:
    partner = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    stack: list[int] = []
    for p in _cyclic_order(bottom, top):
        if stack and stack[-1] == partner.get(p):
            stack.pop()
        else:
            stack.append(p)
    return not stack


def compose_matchings(f: Matching, g: Matching) -> tuple[Matching, int]:
    """Glue f's top edge to g's bottom edge; return (residual matching, loops)."""
    if f.top != g.bottom:
        raise ValueError(f"cannot compose: {f.top} top points vs {g.bottom} bottom points")
    a, b, c = f.bottom, f.top, g.top
    pf = {}
    for x, y in f.pairs:
        pf[x] = y
        pf[y] = x
    pg = {}
    for x, y in g.pairs:
        pg[x] = y
        pg[y] = x

    def hop(side: str, p: int):
        # cross the glued edge: f's top point a+i meets g's bottom point i
        if side == "f" and p >= a:
            return ("g", p - a)
        if side == "g" and p < b:
            return ("f", p + a)
        return None

    visited: set[tuple[str, int]] = set()
    out_pairs = []

    def res_index(side: str, p: int) -> int:
        if side == "f":
            return p  # a bottom point of f, p < a
        return a + (p - b)  # a top point of g

    externals = [("f", i) for i in range(a)] + [("g", b + j) for j in range(c)]
    for start in externals:
        if start in visited:
            continue
        side, p = start
        visited.add(start)
        while True:
            q = (pf if side == "f" else pg)[p]
            visited.add((side, q))
            nxt = hop(side, q)
            if nxt is None:
                out_pairs.append(tuple(sorted((res_index(*start), res_index(side, q)))))
                break
            side, p = nxt
            visited.add((side, p))

    loops = 0
    for i in range(b):
        node = ("f", a + i)
        if node in visited:
            continue
        loops += 1
        side, p = node
        while (side, p) not in visited:
            visited.add((side, p))
            q = (pf if side == "f" else pg)[p]
            visited.add((side, q))
            side, p = hop(side, q)
    return Matching.from_pairs(a, c, out_pairs), loops


def tensor_matchings(f: Matching, g: Matching) -> Matching:
    """Place g to the right of f."""
    a, b = f.bottom, f.top
    c, d = g.bottom, g.top

    def remap_f(p: int) -> int:
        return p if p < a else p + c

    def remap_g(p: int) -> int:
        return a + p if p < c else a + b + p

    pairs = [(remap_f(x), remap_f(y)) for x, y in f.pairs]
    pairs += [(remap_g(x), remap_g(y)) for x, y in g.pairs]
    return Matching.from_pairs(a + c, b + d, pairs)


@dataclass(frozen=True)
class TLMorphism:
    """A Laurent-linear combination of planar matchings n -> m."""

    source: int
    target: int
    terms: tuple[tuple[Matching, LaurentPoly], ...]

    @staticmethod
    def from_terms(source: int, target: int, items) -> TLMorphism:
        acc: dict[Matching, LaurentPoly] = {}
        for mat, coeff in items:
            if mat.bottom != source or mat.top != target:
                raise ValueError(
                    f"matching {mat.bottom}->{mat.top} does not fit morphism {source}->{target}"
                )
            acc[mat] = acc.get(mat, LaurentPoly.zero()) + coeff
        kept = tuple(
            sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: mc[0].pairs)
        )
        return TLMorphism(source, target, kept)

    @staticmethod
    def zero(source: int, target: int) -> TLMorphism:
        return TLMorphism(source, target, ())

    @staticmethod
    def basis(mat: Matching) -> TLMorphism:
        return TLMorphism(mat.bottom, mat.top, ((mat, LaurentPoly.one()),))

    @staticmethod
    def identity(n: int) -> TLMorphism:
        return TLMorphism.basis(Matching.identity(n))

    def __add__(self, other: TLMorphism) -> TLMorphism:
        if not isinstance(other, TLMorphism):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("cannot add morphisms with different endpoints")
        return TLMorphism.from_terms(self.source, self.target, self.terms + other.terms)

    def __sub__(self, other: TLMorphism) -> TLMorphism:
        return self + other.scale(LaurentPoly.monomial(-1, 0))

    def scale(self, coeff: LaurentPoly) -> TLMorphism:
        return TLMorphism.from_terms(
            self.source, self.target, ((m, coeff * c) for m, c in self.terms)
        )

    def coefficient(self, mat: Matching) -> LaurentPoly:
        for m, c in self.terms:
            if m == mat:
                return c
        return LaurentPoly.zero()

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "terms": [
                {"matching": m.to_pair_list(), "coefficient": c.to_dict()}
                for m, c in self.terms
            ],
        }

    @staticmethod
    def from_json_obj(data: dict) -> TLMorphism:
        src, tgt = data["source"], data["target"]
        items = [
            (Matching.from_pairs(src, tgt, t["matching"]), LaurentPoly.from_dict(t["coefficient"]))
            for t in data["terms"]
        ]
        return TLMorphism.from_terms(src, tgt, items)


def compose(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    """f then g (f's top edge glued to g's bottom edge)."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    items = []
    for mf, cf in f.terms:
        for mg, cg in g.terms:
            mat, loops = compose_matchings(mf, mg)
            items.append((mat, cf * cg * DELTA**loops))
    return TLMorphism.from_terms(f.source, g.target, items)


def tensor(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    items = []
    for mf, cf in f.terms:
        for mg, cg in g.terms:
            items.append((tensor_matchings(mf, mg), cf * cg))
    return TLMorphism.from_terms(f.source + g.source, f.target + g.target, items)


def braid_generator(n: int, i: int, sign: int) -> TLMorphism:
    """The crossing of strands i, i+1 among n, resolved into matchings.

    Convention: positive sign gives q^-1 * identity + q * hook; negative
    sign swaps the two coefficients.
    """
    if not 1 <= i < n:
        raise ValueError(f"crossing position {i} out of range for {n} strands")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    qe, qh = (-1, 1) if sign == 1 else (1, -1)
    return TLMorphism.from_terms(
        n,
        n,
        [
            (Matching.identity(n), LaurentPoly.q_power(qe)),
            (Matching.hook(n, i), LaurentPoly.q_power(qh)),
        ],
    )


def enumerate_matchings(bottom: int, top: int) -> Iterator[Matching]:
    """All planar matchings bottom -> top, in a deterministic order."""
    if (bottom + top) % 2 != 0:
        return
    order = _cyclic_order(bottom, top)

    def rec(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for k in range(1, len(points), 2):
            mate = points[k]
            pair = (first, mate) if first < mate else (mate, first)
            for inner in rec(points[1:k]):
                for outer in rec(points[k + 1 :]):
                    yield (pair,) + inner + outer

    for pairs in rec(tuple(order)):
        yield Matching.from_pairs(bottom, top, pairs)


def dim_hom(n: int, m: int) -> int:
    """Number of planar matchings from n to m (0 when n + m is odd)."""
    return sum(1 for _ in enumerate_matchings(n, m))


def twist_scalar(sign: int) -> LaurentPoly:
    """The unit monomial by which a single kink scales a strand.

    Computed by building the kink as a composite in this category --
    (id ox cup), then (crossing ox id), then (id ox cap) -- and reading off
    the coefficient of the identity strand.  Nothing is hardcoded: changing
    the smoothing convention in braid_generator changes this value.
    """
    id1 = TLMorphism.identity(1)
    birth = TLMorphism.basis(Matching.cup())
    death = TLMorphism.basis(Matching.cap())
    word = compose(
        compose(tensor(id1, birth), tensor(braid_generator(2, 1, sign), id1)),
        tensor(id1, death),
    )
    assert len(word.terms) == 1 and word.terms[0][0] == Matching.identity(1)
    return word.terms[0][1]
