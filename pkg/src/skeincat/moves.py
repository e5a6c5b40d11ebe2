"""Local moves on slice words: Reidemeister moves, interchange, zigzag.

Every move takes a word and returns a new word describing an isotopic
diagram (for the kink moves: framed-isotopic up to one twist unit, which is
exactly how evaluation responds).  Moves are location-addressed; applying
one at a location where its pattern does not match raises MoveError.

The width arithmetic only uses each slice's (position, consumed, produced)
triple, so any slice alphabet with those attributes can ride along -- the
surface words reuse this module for their square-local slices.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from skeincat.diagram import Cap, Cross, Cup


class MoveError(ValueError):
    """The requested move does not apply at the named location."""


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    index: int
    position: int = 1
    sign: int = 1
    variant: str = "left"


KINDS = (
    "r2_insert",
    "r2_cancel",
    "r3",
    "interchange",
    "zigzag_insert",
    "zigzag_cancel",
    "kink_insert",
    "kink_cancel",
)


def _splice(word, index, remove, added):
    slices = list(word.slices)
    slices[index : index + remove] = list(added)
    return word.with_slices(slices)


def insert_r2(word, index, position, sign):
    widths = word.widths()
    if not 0 <= index <= len(word.slices):
        raise MoveError(f"no slice gap at index {index}")
    if position + 1 > widths[index]:
        raise MoveError(f"width {widths[index]} at index {index} has no strand pair at {position}")
    return _splice(word, index, 0, [Cross(position, sign), Cross(position, -sign)])


def cancel_r2(word, index):
    s = word.slices[index : index + 2]
    if (
        len(s) == 2
        and isinstance(s[0], Cross)
        and isinstance(s[1], Cross)
        and s[0].position == s[1].position
        and s[0].sign == -s[1].sign
    ):
        return _splice(word, index, 2, [])
    raise MoveError(f"slices at {index} are not an opposite crossing pair")


def apply_r3(word, index):
    s = word.slices[index : index + 3]
    if len(s) == 3 and all(isinstance(x, Cross) for x in s):
        signs = {x.sign for x in s}
        p0, p1, p2 = (x.position for x in s)
        if len(signs) == 1 and p0 == p2 and abs(p1 - p0) == 1:
            sign = s[0].sign
            return _splice(
                word, index, 3, [Cross(p1, sign), Cross(p0, sign), Cross(p1, sign)]
            )
    raise MoveError(f"slices at {index} are not a braid-relation triple")


def interchange(word, index):
    """Swap two adjacent slices whose strand ranges do not interact.

    Disjointness is judged in the frame between them: the second slice's
    consumed range must lie entirely left or entirely right of the first
    slice's produced range.  Positions renumber by the other slice's width
    change when swapping.
    """
    s = word.slices[index : index + 2]
    if len(s) != 2:
        raise MoveError(f"no adjacent slice pair at index {index}")
    first, second = s
    attempts = []
    if second.position >= first.position + first.produced:
        # second acts strictly right of first's output range
        attempts.append(
            (second, second.position - first.produced + first.consumed, first, True)
        )
    if second.position + second.consumed <= first.position:
        # second acts strictly left; first renumbers by second's width change
        attempts.append(
            (first, first.position + second.produced - second.consumed, second, False)
        )
    for slice_, position, other, moved_first in attempts:
        try:
            moved = replace(slice_, position=position)
            pair = [moved, other] if moved_first else [other, moved]
            return _splice(word, index, 2, pair)
        except ValueError:
            # position-locked slices (gate events) reject one of the two
            # renumberings; the other branch, when open, still applies
            continue
    raise MoveError(f"slices at {index} overlap; interchange needs distant slices")


def insert_zigzag(word, index, position, variant="left"):
    widths = word.widths()
    if not 0 <= index <= len(word.slices):
        raise MoveError(f"no slice gap at index {index}")
    if not 1 <= position <= widths[index]:
        raise MoveError(f"no strand at position {position} (width {widths[index]})")
    if variant == "left":
        added = [Cup(position + 1), Cap(position)]
    elif variant == "right":
        added = [Cup(position), Cap(position + 1)]
    else:
        raise MoveError(f"unknown zigzag variant {variant!r}")
    return _splice(word, index, 0, added)


def cancel_zigzag(word, index):
    s = word.slices[index : index + 2]
    if len(s) == 2 and isinstance(s[0], Cup) and isinstance(s[1], Cap):
        if s[1].position in (s[0].position - 1, s[0].position + 1):
            return _splice(word, index, 2, [])
    raise MoveError(f"slices at {index} are not a cancelling cup/cap pair")


def insert_kink(word, index, position, sign):
    """Put a curl on the strand at `position`; evaluation gains one twist unit."""
    widths = word.widths()
    if not 0 <= index <= len(word.slices):
        raise MoveError(f"no slice gap at index {index}")
    if not 1 <= position <= widths[index]:
        raise MoveError(f"no strand at position {position} (width {widths[index]})")
    return _splice(
        word, index, 0, [Cup(position + 1), Cross(position, sign), Cap(position + 1)]
    )


def cancel_kink(word, index):
    s = word.slices[index : index + 3]
    if (
        len(s) == 3
        and isinstance(s[0], Cup)
        and isinstance(s[1], Cross)
        and isinstance(s[2], Cap)
        and s[0].position == s[1].position + 1 == s[2].position
    ):
        return _splice(word, index, 3, [])
    raise MoveError(f"slices at {index} are not a kink")


def apply_move(word, move: MoveSpec):
    if move.kind == "r2_insert":
        return insert_r2(word, move.index, move.position, move.sign)
    if move.kind == "r2_cancel":
        return cancel_r2(word, move.index)
    if move.kind == "r3":
        return apply_r3(word, move.index)
    if move.kind == "interchange":
        return interchange(word, move.index)
    if move.kind == "zigzag_insert":
        return insert_zigzag(word, move.index, move.position, move.variant)
    if move.kind == "zigzag_cancel":
        return cancel_zigzag(word, move.index)
    if move.kind == "kink_insert":
        return insert_kink(word, move.index, move.position, move.sign)
    if move.kind == "kink_cancel":
        return cancel_kink(word, move.index)
    raise MoveError(f"unknown move kind {move.kind!r}")


def applicable_moves(word, kinds=("r2_insert", "r3", "interchange", "zigzag_insert", "r2_cancel", "zigzag_cancel")) -> list[MoveSpec]:
    """Enumerate applicable moves of the given kinds (insertions at all spots)."""
    out: list[MoveSpec] = []
    widths = word.widths()
    n = len(word.slices)
    for kind in kinds:
        if kind in ("r2_insert", "zigzag_insert", "kink_insert"):
            for index in range(n + 1):
                w = widths[index]
                top = w if kind != "r2_insert" else w - 1
                for position in range(1, top + 1):
                    if kind == "r2_insert":
                        out.append(MoveSpec(kind, index, position, 1))
                        out.append(MoveSpec(kind, index, position, -1))
                    elif kind == "kink_insert":
                        out.append(MoveSpec(kind, index, position, 1))
                        out.append(MoveSpec(kind, index, position, -1))
                    else:
                        out.append(MoveSpec(kind, index, position, variant="left"))
                        out.append(MoveSpec(kind, index, position, variant="right"))
        else:
            for index in range(n):
                spec = MoveSpec(kind, index)
                try:
                    apply_move(word, spec)
                except MoveError:
                    continue
                out.append(spec)
    return out
