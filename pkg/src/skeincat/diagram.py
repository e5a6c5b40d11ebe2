"""Tangle diagrams in the square as words of elementary slices.

A diagram is swept bottom-to-top and recorded as a sequence of elementary
slices, each acting at a 1-based strand position within the current width:

    Cup(p)               two new strand ends appear at positions p, p+1
    Cap(p)               the strands at positions p, p+1 join and vanish
    Cross(p, sign)       the strands at positions p, p+1 cross (+1: the
                         strand coming from the lower left passes over)
    Coupon(p, a, b, ...) an opaque box consuming a strands, emitting b

The empty word on n strands is the identity; there is no explicit identity
slice.  Evaluation folds the word through the planar-matching category,
sending Cross to the two-term smoothing combination, so the result of a
closed word is the Kauffman bracket times the empty matching.

The text form is `<source-count>; slice; slice; ...` with slices written
`cup@p`, `cap@p`, `x+@p`, `x-@p`, `coupon@p:a:b:<label-id>`; whitespace is
insignificant and a trailing semicolon is allowed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from skeincat import tl
from skeincat.laurent import LaurentPoly
from skeincat.tl import Matching, TLMorphism


@dataclass(frozen=True)
class Cup:
    position: int

    @property
    def consumed(self) -> int:
        return 0

    @property
    def produced(self) -> int:
        return 2

    def token(self) -> str:
        return f"cup@{self.position}"


@dataclass(frozen=True)
class Cap:
    position: int

    @property
    def consumed(self) -> int:
        return 2

    @property
    def produced(self) -> int:
        return 0

    def token(self) -> str:
        return f"cap@{self.position}"


@dataclass(frozen=True)
class Cross:
    position: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    @property
    def consumed(self) -> int:
        return 2

    @property
    def produced(self) -> int:
        return 2

    def token(self) -> str:
        return f"x{'+' if self.sign == 1 else '-'}@{self.position}"


@dataclass(frozen=True)
class Coupon:
    position: int
    arity_in: int
    arity_out: int
    name: str
    label: TLMorphism

    def __post_init__(self):
        if self.label.source != self.arity_in or self.label.target != self.arity_out:
            raise ValueError(
                f"coupon label is {self.label.source}->{self.label.target}, "
                f"declared {self.arity_in}->{self.arity_out}"
            )

    @property
    def consumed(self) -> int:
        return self.arity_in

    @property
    def produced(self) -> int:
        return self.arity_out

    def token(self) -> str:
        return f"coupon@{self.position}:{self.arity_in}:{self.arity_out}:{self.name}"


Slice = Cup | Cap | Cross | Coupon


def slice_width_change(s) -> int:
    return s.produced - s.consumed


@dataclass(frozen=True)
class SliceWord:
    """A well-formed diagram word; width bookkeeping is checked on creation."""

    source_count: int
    slices: tuple[Slice, ...] = ()

    def __post_init__(self):
        if self.source_count < 0:
            raise ValueError("source count must be non-negative")
        self.widths()  # raises on inconsistency

    def widths(self) -> list[int]:
        """Strand counts between slices: widths()[k] is the width below slice k."""
        w = self.source_count
        out = [w]
        for k, s in enumerate(self.slices):
            if s.position < 1:
                raise ValueError(f"slice {k} ({s.token()}): position must be >= 1")
            if s.consumed == 0:
                # an insertion is allowed anywhere from 1 to w+1
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

    def with_slices(self, slices) -> SliceWord:
        return SliceWord(self.source_count, tuple(slices))

    def is_closed(self) -> bool:
        return self.source_count == 0 and self.target_count == 0

    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if isinstance(s, Cross))


def concatenate(w1: SliceWord, w2: SliceWord) -> SliceWord:
    if w1.target_count != w2.source_count:
        raise ValueError(
            f"cannot concatenate: {w1.target_count} output strands vs "
            f"{w2.source_count} input strands"
        )
    return SliceWord(w1.source_count, w1.slices + w2.slices)


def _slice_morphism(s: Slice, width: int) -> TLMorphism:
    left = TLMorphism.identity(s.position - 1)
    right = TLMorphism.identity(width - (s.position - 1) - s.consumed)
    if isinstance(s, Cup):
        mid = TLMorphism.basis(Matching.cup())
    elif isinstance(s, Cap):
        mid = TLMorphism.basis(Matching.cap())
    elif isinstance(s, Cross):
        mid = tl.braid_generator(2, 1, s.sign)
    elif isinstance(s, Coupon):
        mid = s.label
    else:
        raise ValueError(f"unknown slice {s!r}")
    return tl.tensor(tl.tensor(left, mid), right)


def evaluate(word: SliceWord) -> TLMorphism:
    """The functorial image of the word in the planar-matching category."""
    widths = word.widths()
    out = TLMorphism.identity(word.source_count)
    for s, w in zip(word.slices, widths):
        out = tl.compose(out, _slice_morphism(s, w))
    return out


def kauffman_bracket(word: SliceWord) -> LaurentPoly:
    """The bracket of a closed word: the coefficient of the empty matching."""
    if not word.is_closed():
        raise ValueError(
            f"bracket needs a closed word, got {word.source_count}->{word.target_count}"
        )
    return evaluate(word).coefficient(Matching.from_pairs(0, 0, ()))


# ---------------------------------------------------------------------------
# text form


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_CUPCAP_RE = re.compile(r"^(cup|cap)@(\d+)$")
_CROSS_RE = re.compile(r"^x([+-])@(\d+)$")
_COUPON_RE = re.compile(r"^coupon@(\d+):(\d+):(\d+):([A-Za-z0-9_.-]+)$")


def _statements(text: str):
    """Split on ';', yielding (statement, line, column) of each non-blank one."""
    line, col = 1, 1
    buf: list[str] = []
    start: tuple[int, int] | None = None
    for ch in text + ";":
        if ch == ";":
            stmt = "".join(buf)
            if stmt.strip():
                yield stmt.strip(), start[0], start[1]
            buf = []
            start = None
        else:
            if ch.strip() and start is None:
                start = (line, col)
            buf.append(ch)
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1


def parse_word(text: str, labels: dict[str, TLMorphism] | None = None) -> SliceWord:
    """Parse the text form; `labels` resolves coupon label ids."""
    stmts = list(_statements(text))
    if not stmts:
        raise ParseError("empty input: expected a source strand count", 1, 1)
    head, hline, hcol = stmts[0]
    if not re.fullmatch(r"\d+", head):
        raise ParseError(f"expected a source strand count, got {head!r}", hline, hcol)
    slices: list[Slice] = []
    for stmt, line, col in stmts[1:]:
        m = _CUPCAP_RE.match(stmt)
        if m:
            cls = Cup if m.group(1) == "cup" else Cap
            slices.append(cls(int(m.group(2))))
            continue
        m = _CROSS_RE.match(stmt)
        if m:
            slices.append(Cross(int(m.group(2)), 1 if m.group(1) == "+" else -1))
            continue
        m = _COUPON_RE.match(stmt)
        if m:
            name = m.group(4)
            if labels is None or name not in labels:
                raise ParseError(f"unknown coupon label {name!r}", line, col)
            slices.append(
                Coupon(int(m.group(1)), int(m.group(2)), int(m.group(3)), name, labels[name])
            )
            continue
        raise ParseError(f"unrecognised slice {stmt!r}", line, col)
    return SliceWord(int(head), tuple(slices))


def print_word(word: SliceWord) -> str:
    return "; ".join([str(word.source_count)] + [s.token() for s in word.slices])
