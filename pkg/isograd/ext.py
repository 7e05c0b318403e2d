"""Extensions of pure difference modules.

For pure modules P_i = z^mu_i A_i and P_j = z^mu_j A_j with mu_i < mu_j, the
extension classes Ext(P_j, P_i) are the cokernel of the semilinear Sylvester
operator t(X) = (sigma X) B - A X on r_i x r_j matrices, A = z^mu_i A_i and
B = z^mu_j A_j.  Every coset has a unique representative supported in the
degree window [mu_i, mu_j - 1]; ``reduce`` computes it together with a
certificate X such that t(X) = rep - reduced.
"""

from __future__ import print_function, division, absolute_import

import logging

from isograd.algebra import MatrixK
from isograd.diffmod import DiffModule, is_morphism, solve_kernel, sylvester
from isograd.exceptions import (PairMismatch, RingMismatch, ShapeError,
                                VerificationError)

log = logging.getLogger(__name__)


class SylvesterPair(object):
    """Pure pair (P_i, P_j) with mu_i < mu_j: the data of Ext(P_j, P_i)."""

    def __init__(self, sub, quot):
        """Initialize a pair.

        Args:
            sub (PureModule): P_i, the submodule end.
            quot (PureModule): P_j, the quotient end.

        Raises:
            ValueError: slopes are not strictly increasing.
            RingMismatch: the ends live over different rings or dilations.
        """
        if sub.ring != quot.ring or sub.q != quot.q:
            raise RingMismatch('pair ends over different rings or dilations')
        if not sub.slope < quot.slope:
            raise ValueError('Pair slopes must be strictly increasing, got '
                             '{} and {}.'.format(sub.slope, quot.slope))
        self.sub = sub
        self.quot = quot
        self.q = sub.q
        self.ring = sub.ring

    @property
    def gap(self):
        return self.quot.slope - self.sub.slope

    @property
    def shape(self):
        return (self.sub.r, self.quot.r)

    @property
    def A(self):
        return self.sub.matrix

    @property
    def B(self):
        return self.quot.matrix

    def window(self):
        """Inclusive degree bounds of the window representatives."""
        return (self.sub.slope, self.quot.slope - 1)

    def __eq__(self, other):
        if not isinstance(other, SylvesterPair):
            return NotImplemented
        return self.sub == other.sub and self.quot == other.quot

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.sub, self.quot))

    def __repr__(self):
        return 'SylvesterPair({!r}, {!r})'.format(self.sub, self.quot)


class ExtClass(object):
    """Extension class: representative, window reduction and certificate."""

    def __init__(self, pair, rep, reduced, certificate):
        self.pair = pair
        self.rep = rep
        self.reduced = reduced
        self.certificate = certificate

    def verify(self):
        """Check t(certificate) + reduced = rep and the window support."""
        if t_apply(self.pair, self.certificate) + self.reduced != self.rep:
            return False
        bounds = self.reduced.degree_range()
        if bounds is None:
            return True
        lo, hi = self.pair.window()
        return lo <= bounds[0] and bounds[1] <= hi

    def __eq__(self, other):
        if not isinstance(other, ExtClass):
            return NotImplemented
        return self.pair == other.pair and self.reduced == other.reduced

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.pair, self.reduced))

    def __repr__(self):
        return 'ExtClass(reduced={!r})'.format(self.reduced)


def _check_shape(pair, X, what):
    if X.shape != pair.shape:
        raise ShapeError('{} of shape {} for a pair of shape {}'.format(
            what, X.shape, pair.shape))
    if X.ring != pair.ring:
        raise RingMismatch('{} over {}, pair over {}'.format(what, X.ring,
                                                             pair.ring))


def t_apply(pair, X):
    """t(X) = (sigma X)(z^mu_j A_j) - (z^mu_i A_i) X."""
    _check_shape(pair, X, 'argument')
    return sylvester(pair.q, pair.A, pair.B, X)


def reduce(pair, U):
    """Reduce U modulo the image of t to its window representative.

    Degrees above the window are cleared from the top: the degree-d block U_d
    (d >= mu_j) is removed by X = q^-m U_d A_j^-1 z^m, m = d - mu_j, which
    moves mass to degree d - gap.  Degrees below the window are then cleared
    from the bottom with X = -A_i^-1 U_d z^(d - mu_i), moving mass to
    d + gap, which stays below mu_j.

    Args:
        pair (SylvesterPair): the pure pair.
        U (MatrixK): r_i x r_j representative.

    Returns:
        ExtClass
    """
    _check_shape(pair, U, 'representative')
    ring = pair.ring
    lo, hi = pair.window()
    current = U
    cert = MatrixK.zeros(ring, *pair.shape)
    steps = 0
    while True:
        bounds = current.degree_range()
        if bounds is None or bounds[1] <= hi:
            break
        d = bounds[1]
        m = d - pair.quot.slope
        X = (current.coefficient(d) @ pair.quot.A0_inv).scale(
            pair.q.power(-m)).shift(m)
        current = current - t_apply(pair, X)
        cert = cert + X
        steps += 1
    while True:
        bounds = current.degree_range()
        if bounds is None or bounds[0] >= lo:
            break
        d = bounds[0]
        X = -(pair.sub.A0_inv @ current.coefficient(d)).shift(
            d - pair.sub.slope)
        current = current - t_apply(pair, X)
        cert = cert + X
        steps += 1
    log.debug('reduced representative in %d steps', steps)
    return ExtClass(pair, U, current, cert)


def ext_basis(pair):
    """Monomial basis z^d E_ab of the window, mu_i <= d < mu_j."""
    lo, hi = pair.window()
    rows, cols = pair.shape
    return [MatrixK.monomial(pair.ring, rows, cols, a, b, d)
            for d in range(lo, hi + 1)
            for a in range(rows) for b in range(cols)]


def delta(pair):
    """Rank of Ext(P_j, P_i): r_i r_j (mu_j - mu_i)."""
    return pair.sub.r * pair.quot.r * pair.gap


def coordinates(cls):
    """Coordinates of the reduced form in the ``ext_basis`` order."""
    lo, hi = cls.pair.window()
    rows, cols = cls.pair.shape
    return [cls.reduced[a, b].coeff(d) for d in range(lo, hi + 1)
            for a in range(rows) for b in range(cols)]


def from_coordinates(pair, coords):
    """The class whose window representative has the given coordinates."""
    basis = ext_basis(pair)
    if len(coords) != len(basis):
        raise ShapeError('expected {} coordinates, got {}'.format(
            len(basis), len(coords)))
    U = MatrixK.zeros(pair.ring, *pair.shape)
    for E, c in zip(basis, coords):
        U = U + E.scale(c)
    return reduce(pair, U)


def zero_class(pair):
    return reduce(pair, MatrixK.zeros(pair.ring, *pair.shape))


def ext_add(a, b):
    """Baer sum: the class of rep_a + rep_b."""
    if a.pair != b.pair:
        raise PairMismatch('cannot add classes of different pairs')
    return reduce(a.pair, a.rep + b.rep)


def ext_scale(c, a):
    """Scalar action: the class of c rep."""
    return reduce(a.pair, a.rep.scale(c))


def build_extension(pair, U):
    """The extension module C_U = [[z^mu_i A_i, U], [0, z^mu_j A_j]]."""
    _check_shape(pair, U, 'extension block')
    ring = pair.ring
    ri, rj = pair.shape
    C = MatrixK.assemble(ring, [[pair.A, U],
                                [MatrixK.zeros(ring, rj, ri), pair.B]])
    return DiffModule(pair.q, C, check=False)


def injection(pair):
    """Matrix of P_i -> R_U: (I; 0)."""
    ri, rj = pair.shape
    return MatrixK.assemble(pair.ring, [[MatrixK.identity(pair.ring, ri)],
                                        [MatrixK.zeros(pair.ring, rj, ri)]])


def projection(pair):
    """Matrix of R_U -> P_j: (0 I)."""
    ri, rj = pair.shape
    return MatrixK.assemble(pair.ring, [[MatrixK.zeros(pair.ring, rj, ri),
                                         MatrixK.identity(pair.ring, rj)]])


def unipotent(pair, X):
    """The gauge [[I, X], [0, I]] of an extension module."""
    ring = pair.ring
    ri, rj = pair.shape
    return MatrixK.assemble(ring, [[MatrixK.identity(ring, ri), X],
                                   [MatrixK.zeros(ring, rj, ri),
                                    MatrixK.identity(ring, rj)]])


def splitting_gauge(cls):
    """F = I - [[0, X], [0, 0]] for the certificate X.

    F is a morphism from R_rep to R_reduced, so it splits R_rep when the
    class is zero.
    """
    return unipotent(cls.pair, -cls.certificate)


def is_split(cls):
    """True iff the class is zero; the splitting gauge is re-verified."""
    if not cls.reduced.is_zero():
        return False
    F = splitting_gauge(cls)
    if not is_morphism(F, build_extension(cls.pair, cls.rep),
                       build_extension(cls.pair, cls.reduced)):
        raise VerificationError('splitting gauge failed verification')
    return True


def t_kernel(pair, window):
    """Kernel of t among matrices supported in ``window``.

    These are the morphisms P_j -> P_i, which vanish for pure modules of
    different slopes.
    """
    return solve_kernel(pair.q, pair.A, pair.B, pair.shape, window)
