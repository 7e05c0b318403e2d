"""Exact coefficient rings, Laurent polynomials and matrices over them.

The difference ring used throughout is K = C[z, 1/z] with the dilation
sigma(z) = q z, where C is either the rationals or a finite quotient ring
Q[t]/(p(t)).  Scalars of C are ``fractions.Fraction`` (rationals) or
``Residue`` (quotient rings).  Matrices over K are numpy object arrays of
``LaurentPoly`` entries wrapped in ``MatrixK``.
"""

from __future__ import print_function, division, absolute_import

from fractions import Fraction
import functools
import logging
import numbers

import numpy as np
import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from isograd.exceptions import NotInvertible, RingMismatch, ShapeError

log = logging.getLogger(__name__)

_T, _Z = sympy.symbols('t z')


def to_qq(x):
    """Convert a rational number to an element of sympy's QQ domain."""
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def from_qq(x):
    """Convert an element of sympy's QQ domain (or a sympy Rational)."""
    if hasattr(x, 'p') and hasattr(x, 'q'):
        return Fraction(int(x.p), int(x.q))
    return Fraction(int(x.numerator), int(x.denominator))


def qq_matrix(rows, ncols=None):
    """Build a DomainMatrix over QQ from rows of rationals.

    Args:
        rows (list): list of rows, each a list of rationals.
        ncols (int): number of columns; required when ``rows`` is empty.

    Returns:
        DomainMatrix
    """
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0])
    data = [[to_qq(c) for c in row] for row in rows]
    return DomainMatrix(data, (nrows, ncols), QQ)


@functools.lru_cache(maxsize=None)
def _generator_power_coords(modulus, k):
    """Coordinates of t^k in Q[t]/(p) over the basis 1, t, ..., t^(n-1).

    ``modulus`` is the monic p as a tuple, constant term first.
    """
    n = len(modulus) - 1
    if k < n:
        return tuple(Fraction(int(i == k)) for i in range(n))
    prev = _generator_power_coords(modulus, k - 1)
    # t^n = -(p_0 + p_1 t + ... + p_(n-1) t^(n-1))
    shifted = (Fraction(0),) + prev[:-1]
    return tuple(s - prev[-1] * p for s, p in zip(shifted, modulus))


@functools.lru_cache(maxsize=None)
def _rational_power(q, m):
    return q ** m


class CoeffRing(object):
    """Coefficient ring C: the rationals or Q[t]/(p(t)).

    The modulus is normalized to be monic; it is stored as the tuple of its
    coefficients in increasing degree, the leading 1 included.
    """

    def __init__(self, modulus=None):
        """Initialize a coefficient ring.

        Args:
            modulus (list): coefficients of p(t) (constant term first), as
                rationals or rational strings. Defaults to None, which gives
                the rationals.
        """
        if modulus is None:
            self.kind = 'Q'
            self.modulus = ()
            self.rank = 1
        else:
            coeffs = [Fraction(c) for c in modulus]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if len(coeffs) < 2:
                raise ValueError('Quotient ring modulus must have degree >= 1.')
            lead = coeffs[-1]
            self.kind = 'quotient'
            self.modulus = tuple(c / lead for c in coeffs)
            self.rank = len(coeffs) - 1
        self._companion_powers = self._make_companion_powers()

    @classmethod
    def rationals(cls):
        return cls()

    @classmethod
    def quotient(cls, modulus):
        return cls(modulus)

    def _make_companion_powers(self):
        """Powers T^0, ..., T^(rank-1) of the companion matrix of p(t)."""
        n = self.rank
        eye = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                eye[i, j] = Fraction(int(i == j))
        if self.kind == 'Q':
            return [eye]
        comp = np.empty((n, n), dtype=object)
        comp.fill(Fraction(0))
        for k in range(n - 1):
            comp[k + 1, k] = Fraction(1)
        for i in range(n):
            comp[i, n - 1] = -self.modulus[i]
        powers = [eye]
        for _ in range(n - 1):
            powers.append(np.dot(comp, powers[-1]))
        return powers

    def __eq__(self, other):
        if not isinstance(other, CoeffRing):
            return NotImplemented
        return (self.kind, self.modulus) == (other.kind, other.modulus)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        if self.kind == 'Q':
            return 'CoeffRing(Q)'
        terms = ', '.join(str(c) for c in self.modulus)
        return 'CoeffRing(Q[t]/({}))'.format(terms)

    # ----- elements -----

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce ``x`` into this ring.

        Accepts ints, Fractions, rational strings, Residues of this ring and
        (for quotient rings) sequences of polynomial coefficients in t.
        """
        if isinstance(x, Residue):
            if x.ring != self:
                raise RingMismatch('scalar belongs to {}, expected {}'.format(
                    x.ring, self))
            return x if self.kind == 'quotient' else x.coords[0]
        if isinstance(x, (list, tuple)):
            coeffs = [Fraction(c) for c in x]
            if self.kind == 'Q':
                if any(coeffs[1:]):
                    raise RingMismatch('polynomial scalar given for the rationals')
                return coeffs[0] if coeffs else Fraction(0)
            return self._from_poly(coeffs)
        if isinstance(x, (numbers.Rational, str)):
            x = Fraction(x)
            if self.kind == 'Q':
                return x
            return Residue(self, (x,) + (Fraction(0),) * (self.rank - 1))
        raise TypeError('cannot coerce {!r} into {}'.format(x, self))

    def _from_poly(self, coeffs):
        out = [Fraction(0)] * self.rank
        for k, c in enumerate(coeffs):
            if not c:
                continue
            for i, v in enumerate(_generator_power_coords(self.modulus, k)):
                out[i] += c * v
        return Residue(self, tuple(out))

    def generator(self):
        """The class of t (quotient rings only)."""
        if self.kind == 'Q':
            raise RingMismatch('the rationals have no generator t')
        return self._from_poly([0, 1])

    def generator_power(self, k):
        if k == 0:
            return self.one()
        if self.kind == 'Q':
            raise RingMismatch('the rationals have no generator t')
        return self._from_poly([0] * k + [1])

    def basis(self):
        """Q-basis 1, t, ..., t^(rank-1)."""
        return [self.generator_power(k) for k in range(self.rank)]

    def coordinates(self, x):
        """Q-coordinates of ``x`` in the basis 1, t, ..., t^(rank-1)."""
        x = self(x)
        if self.kind == 'Q':
            return (x,)
        return x.coords

    def from_coordinates(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.rank:
            raise ShapeError('expected {} coordinates, got {}'.format(
                self.rank, len(coords)))
        if self.kind == 'Q':
            return coords[0]
        return Residue(self, coords)

    def is_rational(self, x):
        """True if ``x`` lies in the image of Q."""
        return not any(self.coordinates(x)[1:])

    def regular_matrix(self, x):
        """Matrix of multiplication by ``x`` over Q (numpy object array)."""
        coords = self.coordinates(x)
        out = np.empty((self.rank, self.rank), dtype=object)
        out.fill(Fraction(0))
        for c, power in zip(coords, self._companion_powers):
            if c:
                out = out + power * c
        return out

    def _mul_coords(self, a, b):
        reg = np.empty((self.rank, self.rank), dtype=object)
        reg.fill(Fraction(0))
        for c, power in zip(a, self._companion_powers):
            if c:
                reg = reg + power * c
        return tuple(np.dot(reg, np.array(b, dtype=object)))

    def is_unit(self, x):
        x = self(x)
        if self.kind == 'Q':
            return x != 0
        return qq_matrix(self.regular_matrix(x).tolist()).det() != QQ.zero

    def inverse(self, x):
        """Multiplicative inverse of a unit.

        Raises:
            NotInvertible: ``x`` is not a unit.
        """
        x = self(x)
        if self.kind == 'Q':
            if x == 0:
                raise NotInvertible('0 is not a unit', det=x)
            return 1 / x
        reg = qq_matrix(self.regular_matrix(x).tolist())
        if reg.det() == QQ.zero:
            raise NotInvertible('{} is not a unit of {}'.format(x, self), det=x)
        inv = reg.inv().to_Matrix()
        return Residue(self, tuple(from_qq(inv[i, 0])
                                   for i in range(self.rank)))


class Residue(object):
    """Element of a quotient ring Q[t]/(p(t)), stored by its coordinates."""

    __slots__ = ('ring', 'coords')

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = tuple(Fraction(c) for c in coords)

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise RingMismatch('cannot combine scalars of {} and {}'.format(
                    self.ring, other.ring))
            return other
        if isinstance(other, numbers.Rational):
            return self.ring(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(self.ring, [a + b for a, b in zip(self.coords,
                                                          other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return Residue(self.ring, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            return Residue(self.ring, [a * other for a in self.coords])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Residue(self.ring, self.ring._mul_coords(self.coords,
                                                        other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * self.ring.inverse(other)

    __div__ = __truediv__

    def __pow__(self, n):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return any(self.coords)

    __nonzero__ = __bool__

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except RingMismatch:
            return False
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.ring.modulus, self.coords))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append('{}*t'.format(c))
            else:
                terms.append('{}*t^{}'.format(c, k))
        return '(' + ' + '.join(terms) + ')' if terms else '0'

    def __repr__(self):
        return 'Residue({})'.format(self)


class DilationQ(object):
    """The dilation parameter q of sigma(z) = q z.

    q is a rational with q not in {0, 1, -1}, so q^m = 1 only for m = 0.
    """

    def __init__(self, q):
        q = Fraction(q)
        if q in (0, 1, -1):
            raise ValueError('q must be a rational outside {0, 1, -1}.')
        self.q = q

    def power(self, m):
        """q^m as an exact rational."""
        return _rational_power(self.q, m)

    def inverse(self):
        return DilationQ(1 / self.q)

    def __eq__(self, other):
        if not isinstance(other, DilationQ):
            return NotImplemented
        return self.q == other.q

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(('q', self.q))

    def __str__(self):
        return str(self.q)

    def __repr__(self):
        return 'DilationQ({})'.format(self.q)


class LaurentPoly(object):
    """Element of K = C[z, 1/z]: a finite map degree -> nonzero scalar."""

    __slots__ = ('ring', '_terms')

    def __init__(self, ring, terms=None):
        """Initialize a Laurent polynomial.

        Args:
            ring (CoeffRing): coefficient ring.
            terms (dict): degree -> coefficient; zero coefficients are
                dropped.
        """
        clean = {}
        if terms:
            for d, c in terms.items():
                c = ring(c)
                if c:
                    clean[int(d)] = c
        self.ring = ring
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def _clean(cls, ring, terms):
        """Build from a degree -> scalar dict already in ``ring``."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = dict(sorted((d, c) for d, c in terms.items() if c))
        return obj

    @classmethod
    def zero(cls, ring):
        return cls._clean(ring, {})

    @classmethod
    def one(cls, ring):
        return cls._clean(ring, {0: ring.one()})

    @classmethod
    def constant(cls, ring, c):
        return cls._clean(ring, {0: ring(c)})

    @classmethod
    def monomial(cls, ring, c, d):
        """c z^d."""
        return cls._clean(ring, {int(d): ring(c)})

    def terms(self):
        """(degree, coefficient) pairs in increasing degree."""
        return list(self._terms.items())

    def support(self):
        return list(self._terms)

    def coeff(self, d):
        return self._terms.get(d, self.ring.zero())

    @property
    def min_degree(self):
        return next(iter(self._terms)) if self._terms else None

    @property
    def max_degree(self):
        return next(reversed(list(self._terms))) if self._terms else None

    def is_unit(self):
        """True if this is c z^m with c a unit of the coefficient ring."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return self.ring.is_unit(c)

    def is_constant(self):
        return all(d == 0 for d in self._terms)

    def _promote(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatch('cannot combine polynomials over {} and {}'
                                   .format(self.ring, other.ring))
            return other
        if isinstance(other, (numbers.Rational, Residue)):
            return LaurentPoly._clean(self.ring, {0: self.ring(other)})
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for d, c in other._terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return LaurentPoly._clean(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._clean(self.ring, {d: -c for d, c in
                                              self._terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (numbers.Rational, Residue)):
            c = self.ring(other)
            return LaurentPoly._clean(self.ring, {d: a * c for d, a in
                                                  self._terms.items()})
        other = self._promote(other)
        if other is None:
            return NotImplemented
        terms = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                d = d1 + d2
                terms[d] = terms[d] + c1 * c2 if d in terms else c1 * c2
        return LaurentPoly._clean(self.ring, terms)

    __rmul__ = __mul__

    def shift(self, m):
        """Multiply by z^m."""
        return LaurentPoly._clean(self.ring, {d + m: c for d, c in
                                              self._terms.items()})

    def sigma(self, q):
        """sigma(f)(z) = f(q z): the degree-m coefficient is scaled by q^m."""
        return LaurentPoly._clean(self.ring, {d: c * q.power(d) for d, c in
                                              self._terms.items()})

    def map_coefficients(self, func, ring):
        """Apply ``func`` to every coefficient, landing in ``ring``."""
        return LaurentPoly(ring, {d: func(c) for d, c in self._terms.items()})

    def __bool__(self):
        return bool(self._terms)

    __nonzero__ = __bool__

    def __eq__(self, other):
        try:
            other = self._promote(other)
        except RingMismatch:
            return False
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return '0'
        out = []
        for d, c in self._terms.items():
            if d == 0:
                out.append(str(c))
            elif d == 1:
                out.append('{}*z'.format(c))
            else:
                out.append('{}*z^{}'.format(c, d))
        return ' + '.join(out)

    def __repr__(self):
        return 'LaurentPoly({})'.format(self)


def as_laurent(ring, x):
    """Coerce a scalar or Laurent polynomial into K over ``ring``."""
    if isinstance(x, LaurentPoly):
        if x.ring != ring:
            raise RingMismatch('polynomial over {}, expected {}'.format(
                x.ring, ring))
        return x
    return LaurentPoly.constant(ring, x)


class MatrixK(object):
    """Dense matrix over K with sparse Laurent polynomial entries."""

    __slots__ = ('ring', 'entries')

    def __init__(self, ring, entries):
        """Initialize a matrix.

        Args:
            ring (CoeffRing): coefficient ring.
            entries: list of rows (or 2-d array) of Laurent polynomials or
                scalars.
        """
        rows = [list(row) for row in entries]
        if not rows or not rows[0]:
            raise ShapeError('matrices must have positive dimensions')
        ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ShapeError('ragged matrix rows')
        arr = np.empty((len(rows), ncols), dtype=object)
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                arr[i, j] = as_laurent(ring, e)
        self.ring = ring
        self.entries = arr

    @classmethod
    def _wrap(cls, ring, arr):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.entries = arr
        return obj

    @classmethod
    def zeros(cls, ring, rows, cols):
        arr = np.empty((rows, cols), dtype=object)
        for idx in np.ndindex(rows, cols):
            arr[idx] = LaurentPoly.zero(ring)
        return cls._wrap(ring, arr)

    @classmethod
    def identity(cls, ring, n):
        out = cls.zeros(ring, n, n)
        for i in range(n):
            out.entries[i, i] = LaurentPoly.one(ring)
        return out

    @classmethod
    def monomial(cls, ring, rows, cols, a, b, d, c=1):
        """The matrix c z^d E_ab."""
        out = cls.zeros(ring, rows, cols)
        out.entries[a, b] = LaurentPoly.monomial(ring, c, d)
        return out

    @classmethod
    def assemble(cls, ring, grid):
        """Block matrix from a grid (list of rows) of MatrixK blocks."""
        arr = np.block([[m.entries for m in row] for row in grid])
        return cls._wrap(ring, arr.astype(object))

    @classmethod
    def hstack(cls, ring, mats):
        return cls.assemble(ring, [list(mats)])

    @classmethod
    def vstack(cls, ring, mats):
        return cls.assemble(ring, [[m] for m in mats])

    @property
    def shape(self):
        return self.entries.shape

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, idx):
        return self.entries[idx]

    def block(self, r0, r1, c0, c1):
        return MatrixK._wrap(self.ring, self.entries[r0:r1, c0:c1].copy())

    def tolist(self):
        return self.entries.tolist()

    def _map(self, func, ring=None):
        ring = self.ring if ring is None else ring
        arr = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(*self.shape):
            arr[idx] = func(self.entries[idx])
        return MatrixK._wrap(ring, arr)

    def _check(self, other, op):
        if not isinstance(other, MatrixK):
            raise TypeError('{} needs a MatrixK operand'.format(op))
        if other.ring != self.ring:
            raise RingMismatch('matrices over {} and {}'.format(self.ring,
                                                                other.ring))

    def __add__(self, other):
        self._check(other, 'addition')
        if self.shape != other.shape:
            raise ShapeError('cannot add {} and {} matrices'.format(
                self.shape, other.shape))
        return MatrixK._wrap(self.ring, self.entries + other.entries)

    def __sub__(self, other):
        self._check(other, 'subtraction')
        if self.shape != other.shape:
            raise ShapeError('cannot subtract {} and {} matrices'.format(
                self.shape, other.shape))
        return MatrixK._wrap(self.ring, self.entries - other.entries)

    def __neg__(self):
        return self._map(lambda e: -e)

    def __matmul__(self, other):
        self._check(other, 'multiplication')
        if self.cols != other.rows:
            raise ShapeError('cannot multiply {} by {} matrices'.format(
                self.shape, other.shape))
        return MatrixK._wrap(self.ring, np.dot(self.entries, other.entries))

    def scale(self, c):
        """Multiply every entry by a scalar or Laurent polynomial."""
        c = as_laurent(self.ring, c)
        return self._map(lambda e: e * c)

    def shift(self, m):
        return self._map(lambda e: e.shift(m))

    def sigma(self, q):
        return self._map(lambda e: e.sigma(q))

    def map_coefficients(self, func, ring):
        return self._map(lambda e: e.map_coefficients(func, ring), ring)

    def coefficient(self, d):
        """Constant matrix of the degree-``d`` coefficients."""
        return self._map(lambda e: LaurentPoly.constant(self.ring, e.coeff(d)))

    def degree_range(self):
        """(min degree, max degree) over all entries, or None if zero."""
        lows = [e.min_degree for e in self.entries.flat if e]
        if not lows:
            return None
        highs = [e.max_degree for e in self.entries.flat if e]
        return min(lows), max(highs)

    def support(self):
        return sorted(set(d for e in self.entries.flat for d in e.support()))

    def is_zero(self):
        return not any(self.entries.flat)

    def is_constant(self):
        return all(e.is_constant() for e in self.entries.flat)

    def __eq__(self, other):
        if not isinstance(other, MatrixK):
            return NotImplemented
        if self.ring != other.ring or self.shape != other.shape:
            return False
        return all(a == b for a, b in zip(self.entries.flat,
                                          other.entries.flat))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.shape, tuple(self.entries.flat)))

    def __repr__(self):
        rows = ['[' + ', '.join(str(e) for e in row) + ']'
                for row in self.entries]
        return 'MatrixK([' + ', '.join(rows) + '])'


def sigma_apply(q, f):
    """Apply sigma(z) = q z to a Laurent polynomial."""
    return f.sigma(q)


def sigma_matrix(q, M):
    """Entrywise sigma."""
    return M.sigma(q)


def mat_mul(A, B):
    return A @ B


def mat_add(A, B):
    return A + B


def mat_scale(c, M):
    return M.scale(c)


def _lift(f, shift):
    """sympy expression of z^shift f(z), scalars written as polynomials in t."""
    ring = f.ring
    terms = []
    for d, c in f.terms():
        for k, ck in enumerate(ring.coordinates(c)):
            if ck:
                terms.append(sympy.Rational(ck.numerator, ck.denominator)
                             * _T**k * _Z**(d + shift))
    return sympy.Add(*terms)


def _drop(ring, expr):
    """Inverse of ``_lift`` (with shift 0), reducing t modulo the modulus."""
    terms = {}
    for (kt, d), c in sympy.Poly(expr, _T, _Z).terms():
        if not c:
            continue
        scalar = ring.generator_power(kt) * from_qq(c) if kt else \
            ring(from_qq(c))
        terms[d] = terms[d] + scalar if d in terms else scalar
    return LaurentPoly._clean(ring, terms)


def charpoly(M):
    """Coefficients [1, c_1, ..., c_n] of det(x I - M).

    Computed division-free (Berkowitz) over Q[t, z] on z^s M, where s clears
    negative degrees, then reduced modulo p(t); the coefficients are valid
    over any coefficient ring, zero divisors included.
    """
    if not M.is_square():
        raise ShapeError('characteristic polynomial needs a square matrix')
    n = M.rows
    bounds = M.degree_range()
    s = max(0, -bounds[0]) if bounds else 0
    domain = QQ.poly_ring(_T, _Z)
    rows = [[domain.from_sympy(_lift(M[i, j], s)) for j in range(n)]
            for i in range(n)]
    coeffs = DomainMatrix(rows, (n, n), domain).charpoly()
    return [_drop(M.ring, domain.to_sympy(c)).shift(-k * s)
            for k, c in enumerate(coeffs)]


def determinant(M, cp=None):
    cp = charpoly(M) if cp is None else cp
    n = M.rows
    return cp[n] if n % 2 == 0 else -cp[n]


def adjugate(M, cp=None):
    """Adjugate via Cayley-Hamilton (Horner in M)."""
    cp = charpoly(M) if cp is None else cp
    n = M.rows
    eye = MatrixK.identity(M.ring, n)
    acc = eye
    for k in range(1, n):
        acc = acc @ M + eye.scale(cp[k])
    return acc if (n - 1) % 2 == 0 else -acc


def try_invert(M):
    """Inverse of M over K.

    M is invertible over K iff det(M) = c z^m with c a unit of the coefficient
    ring.

    Args:
        M (MatrixK): square matrix.

    Returns:
        MatrixK: N with M N = N M = I.

    Raises:
        ShapeError: M is not square.
        NotInvertible: det(M) is not a unit of K; carries the determinant.
    """
    if not M.is_square():
        raise ShapeError('only square matrices can be inverted')
    cp = charpoly(M)
    det = determinant(M, cp)
    if not det.is_unit():
        raise NotInvertible('determinant {} is not a unit of K'.format(det),
                            det=det)
    ((d, c),) = det.terms()
    inv_det = LaurentPoly.monomial(M.ring, M.ring.inverse(c), -d)
    inv = adjugate(M, cp).scale(inv_det)
    eye = MatrixK.identity(M.ring, M.rows)
    if M @ inv != eye or inv @ M != eye:
        raise NotInvertible('inverse failed verification', det=det)
    return inv
