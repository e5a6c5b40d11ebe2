"""Bundled diagram corpus and seeded random word generators.

The corpus is a fixed list of named closed words with at most 8 crossings:
torus two-bridge plats (the k = 2 plat is the Hopf link, k = 3 the
trefoil), the figure-eight as the trace closure of (s1 s2^-1)^2, unlinks,
mirrors, disjoint unions, and a batch of seeded random closed words.  Every
entry is exercised by the bracket-against-state-sum comparison.
"""

from __future__ import annotations

import random

from skeincat.diagram import Cap, Cross, Cup, SliceWord


def plat_torus_word(k: int, sign: int = 1) -> SliceWord:
    """Two-bridge plat with k half-twists: k=2 Hopf link, k=3 trefoil."""
    slices = [Cup(1), Cup(2)]
    slices += [Cross(2, sign)] * k
    slices += [Cap(2), Cap(1)]
    return SliceWord(0, tuple(slices))


def trace_closure(braid: list[tuple[int, int]], strands: int = 3) -> SliceWord:
    """Trace closure of a braid word given as (generator index, sign) pairs."""
    slices = [Cup(i) for i in range(1, strands + 1)]
    for i, sign in braid:
        if not 1 <= i < strands:
            raise ValueError(f"braid generator {i} out of range for {strands} strands")
        slices.append(Cross(i, sign))
    slices += [Cap(i) for i in range(strands, 0, -1)]
    return SliceWord(0, tuple(slices))


def figure_eight_word(mirror: bool = False) -> SliceWord:
    s = -1 if mirror else 1
    return trace_closure([(1, s), (2, -s), (1, s), (2, -s)])


def unlink_word(k: int) -> SliceWord:
    slices = []
    for _ in range(k):
        slices += [Cup(1), Cap(1)]
    return SliceWord(0, tuple(slices))


def disjoint_union(a: SliceWord, b: SliceWord) -> SliceWord:
    if not (a.is_closed() and b.is_closed()):
        raise ValueError("disjoint union of words is only defined for closed words")
    return SliceWord(0, a.slices + b.slices)


def random_word(rng: random.Random, n_slices: int, start_width: int | None = None) -> SliceWord:
    """A random well-formed (possibly open) coupon-free word."""
    width = rng.randint(0, 4) if start_width is None else start_width
    source = width
    slices = []
    for _ in range(n_slices):
        options = ["cup"]
        if width >= 2:
            options += ["cap", "cross", "cross"]
        kind = rng.choice(options)
        if kind == "cup":
            slices.append(Cup(rng.randint(1, width + 1)))
            width += 2
        elif kind == "cap":
            slices.append(Cap(rng.randint(1, width - 1)))
            width -= 2
        else:
            slices.append(Cross(rng.randint(1, width - 1), rng.choice((1, -1))))
    return SliceWord(source, tuple(slices))


def random_closed_word(rng: random.Random, max_crossings: int, max_width: int = 8) -> SliceWord:
    """A random closed coupon-free word with at most max_crossings crossings."""
    width = 0
    crossings = 0
    slices = [Cup(1)]
    width = 2
    for _ in range(rng.randint(2, 14)):
        options = []
        if width + 2 <= max_width:
            options.append("cup")
        if width >= 2:
            options.append("cap")
            if crossings < max_crossings:
                options += ["cross", "cross"]
        if not options:
            break
        kind = rng.choice(options)
        if kind == "cup":
            slices.append(Cup(rng.randint(1, width + 1)))
            width += 2
        elif kind == "cap":
            slices.append(Cap(rng.randint(1, width - 1)))
            width -= 2
        else:
            slices.append(Cross(rng.randint(1, width - 1), rng.choice((1, -1))))
            crossings += 1
        if width == 0:
            break
    while width > 0:
        slices.append(Cap(rng.randint(1, width - 1) if width > 2 else 1))
        width -= 2
    return SliceWord(0, tuple(slices))


def bundled_corpus() -> list[tuple[str, SliceWord]]:
    """The fixed verification corpus: >= 30 closed words, <= 8 crossings each."""
    entries: list[tuple[str, SliceWord]] = [("unknot", unlink_word(1))]
    for k in range(2, 6):
        entries.append((f"unlink-{k}", unlink_word(k)))
    for k in range(1, 9):
        entries.append((f"plat-torus-{k}", plat_torus_word(k)))
    for k in (2, 3, 5, 7):
        entries.append((f"plat-torus-{k}-mirror", plat_torus_word(k, sign=-1)))
    entries.append(("figure-eight", figure_eight_word()))
    entries.append(("figure-eight-mirror", figure_eight_word(mirror=True)))
    entries.append(("trefoil-sq-union", disjoint_union(plat_torus_word(3), plat_torus_word(3))))
    entries.append(("hopf-pair-union", disjoint_union(plat_torus_word(2), plat_torus_word(2))))
    entries.append(
        ("trefoil-mixed-union", disjoint_union(plat_torus_word(3), plat_torus_word(3, sign=-1)))
    )
    entries.append(("hopf-unknot-union", disjoint_union(plat_torus_word(2), unlink_word(1))))
    rng = random.Random(2024)
    count = 0
    while count < 10:
        w = random_closed_word(rng, max_crossings=8)
        if w.crossing_count() >= 1:
            entries.append((f"random-{count}", w))
            count += 1
    assert len(entries) >= 30
    assert all(w.crossing_count() <= 8 for _, w in entries)
    return entries
