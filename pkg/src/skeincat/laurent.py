"""Exact arithmetic in the ring Z[q, q^-1] of integer Laurent polynomials.

A polynomial is stored as a tuple of (exponent, coefficient) pairs, sorted
by exponent with all zero coefficients dropped, so equal ring elements are
equal (and hashable) as Python values.  Exponents are capped well below
native overflow territory: any operation that would produce an exponent of
magnitude >= 2**30 raises ExponentOverflowError instead of silently
producing nonsense.

The serialisation format maps exponents (as strings) to coefficients, e.g.
the loop value -q^2 - q^-2 is ``{"2": -1, "-2": -1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MAX_EXPONENT = 1 << 30


class ExponentOverflowError(OverflowError):
    """Raised when an exponent would exceed the supported range."""


def _check_exponent(e: int) -> int:
    if abs(e) >= MAX_EXPONENT:
        raise ExponentOverflowError(f"exponent {e} out of range")
    return e


@dataclass(frozen=True)
class LaurentPoly:
    """An element of Z[q, q^-1] in canonical form."""

    terms: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def from_terms(pairs) -> LaurentPoly:
        """Build from an iterable of (exponent, coefficient) pairs.

        Repeated exponents are summed; zero coefficients are dropped.
        """
        acc: dict[int, int] = {}
        for e, c in pairs:
            if not isinstance(e, int) or not isinstance(c, int):
                raise ValueError(f"exponent and coefficient must be ints, got ({e!r}, {c!r})")
            _check_exponent(e)
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @staticmethod
    def zero() -> LaurentPoly:
        return LaurentPoly()

    @staticmethod
    def one() -> LaurentPoly:
        return LaurentPoly(((0, 1),))

    @staticmethod
    def monomial(coeff: int, exp: int) -> LaurentPoly:
        """The monomial coeff * q^exp."""
        _check_exponent(exp)
        if coeff == 0:
            return LaurentPoly()
        return LaurentPoly(((exp, coeff),))

    @staticmethod
    def q_power(exp: int) -> LaurentPoly:
        return LaurentPoly.monomial(1, exp)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly.from_terms(self.terms + other.terms)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _check_exponent(e1 + e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a non-negative int, got {n!r}")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, k: int) -> LaurentPoly:
        """Multiply by the integer scalar k."""
        if k == 0:
            return LaurentPoly()
        return LaurentPoly(tuple((e, k * c) for e, c in self.terms))

    def substitute(self, value: Fraction) -> Fraction:
        """Evaluate at a nonzero rational value of q."""
        value = Fraction(value)
        if value == 0:
            raise ValueError("cannot substitute q = 0 into a Laurent polynomial")
        return sum((c * value**e for e, c in self.terms), Fraction(0))

    def min_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return self.terms[0][0]

    def max_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return self.terms[-1][0]

    def to_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}

    @staticmethod
    def from_dict(data: dict) -> LaurentPoly:
        pairs = []
        for key, c in data.items():
            try:
                e = int(key)
            except (TypeError, ValueError):
                raise ValueError(f"exponent key must parse as an int, got {key!r}") from None
            if not isinstance(c, int):
                raise ValueError(f"coefficient must be an int, got {c!r}")
            pairs.append((e, c))
        return LaurentPoly.from_terms(pairs)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            if e == 0:
                mono = str(abs(c))
            else:
                head = "" if abs(c) == 1 else f"{abs(c)}*"
                mono = f"{head}q^{e}" if e != 1 else f"{head}q"
            bits.append(("- " if c < 0 else "+ ") + mono)
        out = " ".join(bits)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


#: Value of a null-homotopic circle under the Kauffman bracket relations.
DELTA = LaurentPoly.from_terms([(2, -1), (-2, -1)])

ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
