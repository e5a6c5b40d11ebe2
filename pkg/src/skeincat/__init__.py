"""Skein categories and skein algebras of punctured surfaces.

Coefficients live in Z[q, q^-1] with the Kauffman-bracket local relations:
a positive crossing resolves as q^-1 * (identity smoothing) + q * (cup-cap
smoothing), and a null-homotopic circle evaluates to -q^2 - q^-2.

The package is organised bottom-up:

* ``laurent``    -- exact integer Laurent polynomials in q
* ``tl``         -- the Temperley-Lieb category of planar matchings
* ``diagram``    -- tangle diagrams in a square as words of elementary slices
* ``statesum``   -- an independent brute-force evaluator used as an oracle
* ``moves``      -- Reidemeister / isotopy moves on slice words
* ``surface``    -- diagrams and skein algebras on a disk with handles
* ``tambara``    -- relative tensor product of skein modules over a collar
* ``excision``   -- the gluing functor and round-trip decomposition
* ``cli``        -- command-line entry points
"""

from skeincat.laurent import LaurentPoly

__all__ = ["LaurentPoly"]
__version__ = "0.1.0"
