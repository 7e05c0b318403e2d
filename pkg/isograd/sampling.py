"""Random exact samples for randomized checks and sweeps.

All samplers take a ``numpy.random.Generator`` so that runs are reproducible
from a seed.
"""

from __future__ import print_function, division, absolute_import

from fractions import Fraction

import numpy as np

from isograd.algebra import LaurentPoly, MatrixK
from isograd.diffmod import PureModule
from isograd.moduli import FilteredPresentation, GradedSpec, UnipotentGauge


def random_rational(rng, bound=3, denominators=(1, 2)):
    """Rational with numerator in [-bound, bound]."""
    num = int(rng.integers(-bound, bound + 1))
    return Fraction(num, int(rng.choice(denominators)))


def random_scalar(rng, ring, bound=3):
    return ring.from_coordinates([random_rational(rng, bound)
                                  for _ in range(ring.rank)])


def random_laurent(rng, ring, low, high, density=0.6):
    """Laurent polynomial with support in [low, high]."""
    terms = {}
    for d in range(low, high + 1):
        if rng.random() < density:
            terms[d] = random_scalar(rng, ring)
    return LaurentPoly(ring, terms)


def random_matrix(rng, ring, rows, cols, low, high, density=0.6):
    return MatrixK(ring, [[random_laurent(rng, ring, low, high, density)
                           for _ in range(cols)] for _ in range(rows)])


def random_invertible_constant(rng, ring, r, bound=2):
    """L D U with unitriangular L, U and a rational diagonal D.

    The entries are rational, so the result is invertible over every
    coefficient ring.
    """
    L = np.empty((r, r), dtype=object)
    U = np.empty((r, r), dtype=object)
    D = np.empty((r, r), dtype=object)
    for a in range(r):
        for b in range(r):
            L[a, b] = (Fraction(1) if a == b else
                       random_rational(rng, bound) if a > b else Fraction(0))
            U[a, b] = (Fraction(1) if a == b else
                       random_rational(rng, bound) if a < b else Fraction(0))
            D[a, b] = Fraction(0)
        value = Fraction(0)
        while not value:
            value = random_rational(rng, bound)
        D[a, a] = value
    return MatrixK(ring, np.dot(np.dot(L, D), U).tolist())


def random_pure(rng, q, ring, slope, r):
    return PureModule(q, slope, random_invertible_constant(rng, ring, r))


def random_graded_spec(rng, q, ring, k, max_rank=2, slopes=(-3, 6)):
    """Graded spec with k distinct slopes drawn from the inclusive range."""
    pool = np.arange(slopes[0], slopes[1] + 1)
    chosen = sorted(int(s) for s in rng.choice(pool, size=k, replace=False))
    return GradedSpec(q, [random_pure(rng, q, ring, mu,
                                      int(rng.integers(1, max_rank + 1)))
                          for mu in chosen])


def random_blocks(rng, spec, low, high, density=0.6):
    return {(i, j): random_matrix(rng, spec.ring, *spec.block_shape(i, j),
                                  low=low, high=high, density=density)
            for i, j in spec.pairs()}


def random_presentation(rng, spec, low=-2, high=5, density=0.6):
    return FilteredPresentation(spec, random_blocks(rng, spec, low, high,
                                                    density))


def random_gauge(rng, spec, low=-4, high=4, density=0.5):
    return UnipotentGauge(spec, random_blocks(rng, spec, low, high, density))
