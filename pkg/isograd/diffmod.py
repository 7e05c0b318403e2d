"""Difference modules in matrix form.

A difference module of rank n over K is given by an invertible matrix A; it
stands for (K^n, Phi_A) with Phi_A(X) = A^-1 sigma(X).  Morphisms from
(K^n, Phi_A) to (K^p, Phi_B) are the p x n matrices F with
(sigma F) A = B F, and gauge transformations act by F[A] = (sigma F) A F^-1.
"""

from __future__ import print_function, division, absolute_import

from collections import namedtuple
from fractions import Fraction
import logging

from isograd.algebra import (MatrixK, from_qq, qq_matrix, try_invert)
from isograd.exceptions import (GaugeNotInvertible, NotInvertible,
                                RingMismatch, ShapeError)

log = logging.getLogger(__name__)


HomSpace = namedtuple('HomSpace', ['basis', 'qdim', 'free', 'window'])


class DiffModule(object):
    """Difference module (K^n, Phi_A)."""

    def __init__(self, q, A, check=True):
        """Initialize a difference module.

        Args:
            q (DilationQ): dilation of sigma.
            A (MatrixK): invertible n x n matrix.
            check (bool): verify that A is invertible over K. Defaults to
                True.

        Raises:
            ShapeError: A is not square.
            NotInvertible: A is not in GL_n(K).
        """
        if not A.is_square():
            raise ShapeError('module matrix must be square, got {}'.format(
                A.shape))
        if check:
            try_invert(A)
        self.q = q
        self.A = A
        self.ring = A.ring
        self.n = A.rows

    @property
    def rank(self):
        return self.n

    def is_pure(self):
        """True if A = z^m A0 with A0 constant."""
        bounds = self.A.degree_range()
        return bounds is not None and bounds[0] == bounds[1]

    def __eq__(self, other):
        if not isinstance(other, DiffModule):
            return NotImplemented
        return self.q == other.q and self.A == other.A

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.q, self.A))

    def __repr__(self):
        return 'DiffModule(q={}, A={!r})'.format(self.q, self.A)


class PureModule(object):
    """Pure module of integer slope: matrix z^slope A0 with A0 constant."""

    def __init__(self, q, slope, A0):
        """Initialize a pure module.

        Args:
            q (DilationQ): dilation of sigma.
            slope (int): slope mu.
            A0 (MatrixK): constant invertible r x r matrix.

        Raises:
            ValueError: A0 has non-constant entries.
            NotInvertible: A0 is not invertible over the coefficient ring.
        """
        if not A0.is_square():
            raise ShapeError('A0 must be square, got {}'.format(A0.shape))
        if not A0.is_constant():
            raise ValueError('A0 must have constant entries.')
        self.q = q
        self.slope = int(slope)
        self.A0 = A0
        self.A0_inv = try_invert(A0)
        self.ring = A0.ring
        self.r = A0.rows

    @property
    def rank(self):
        return self.r

    @property
    def matrix(self):
        """z^slope A0."""
        return self.A0.shift(self.slope)

    def as_diffmodule(self):
        return DiffModule(self.q, self.matrix, check=False)

    def __eq__(self, other):
        if not isinstance(other, PureModule):
            return NotImplemented
        return (self.q, self.slope, self.A0) == (other.q, other.slope,
                                                 other.A0)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.q, self.slope, self.A0))

    def __repr__(self):
        return 'PureModule(slope={}, A0={!r})'.format(self.slope, self.A0)


def _as_module(M):
    return M.as_diffmodule() if isinstance(M, PureModule) else M


def sylvester(q, A, B, X):
    """The semilinear Sylvester operator X -> (sigma X) B - A X."""
    return X.sigma(q) @ B - A @ X


def gauge(F, M):
    """Gauge transform F[A] = (sigma F) A F^-1.

    Args:
        F (MatrixK): invertible n x n matrix.
        M (DiffModule): module of rank n.

    Returns:
        DiffModule

    Raises:
        GaugeNotInvertible: F is not in GL_n(K).
    """
    M = _as_module(M)
    if F.shape != (M.n, M.n):
        raise ShapeError('gauge of shape {} for a rank {} module'.format(
            F.shape, M.n))
    try:
        F_inv = try_invert(F)
    except NotInvertible as e:
        raise GaugeNotInvertible(str(e))
    return DiffModule(M.q, F.sigma(M.q) @ M.A @ F_inv, check=False)


def is_morphism(F, M, N):
    """True iff (sigma F) A_M = A_N F."""
    M, N = _as_module(M), _as_module(N)
    if M.q != N.q:
        raise RingMismatch('modules over different dilations')
    if F.shape != (N.n, M.n):
        raise ShapeError('morphism of shape {} between ranks {} and {}'.format(
            F.shape, M.n, N.n))
    return F.sigma(M.q) @ M.A == N.A @ F


def direct_sum(M, N):
    """Block diagonal module M + N."""
    M, N = _as_module(M), _as_module(N)
    ring = M.ring
    A = MatrixK.assemble(ring, [[M.A, MatrixK.zeros(ring, M.n, N.n)],
                                [MatrixK.zeros(ring, N.n, M.n), N.A]])
    return DiffModule(M.q, A, check=False)


def _is_rational_matrix(A):
    ring = A.ring
    return all(ring.is_rational(c) for e in A.entries.flat
               for _, c in e.terms())


def _flatten(ring, X, keys=None):
    """Q-coordinates of a matrix keyed by (row, col, degree, coordinate)."""
    out = {} if keys is None else keys
    for (a, b), e in zip(_positions(X), X.entries.flat):
        for d, c in e.terms():
            for k, ck in enumerate(ring.coordinates(c)):
                if ck:
                    out[(a, b, d, k)] = ck
    return out


def _positions(X):
    return [(a, b) for a in range(X.rows) for b in range(X.cols)]


def solve_kernel(q, A, B, shape, window, coords=None):
    """Q-basis of the X of a given shape and support with (sigma X) B = A X.

    Args:
        q (DilationQ): dilation.
        A (MatrixK): left matrix.
        B (MatrixK): right matrix.
        shape (tuple): shape of X.
        window (tuple): inclusive degree bounds of X.
        coords (int): number of ring coordinates to solve for. Defaults to the
            rank of the coefficient ring over Q.

    Returns:
        list: MatrixK kernel vectors, linearly independent over Q.
    """
    ring = A.ring
    lo, hi = window
    rows, cols = shape
    if lo > hi:
        return []
    coords = ring.rank if coords is None else coords
    basis = ring.basis()
    unknowns = [(a, b, d, k) for d in range(lo, hi + 1)
                for a in range(rows) for b in range(cols)
                for k in range(coords)]
    images = []
    equations = {}
    for a, b, d, k in unknowns:
        E = MatrixK.monomial(ring, rows, cols, a, b, d, basis[k])
        image = _flatten(ring, sylvester(q, A, B, E))
        images.append(image)
        for key in image:
            equations.setdefault(key, len(equations))
    if not equations:
        null = [[Fraction(int(i == j)) for j in range(len(unknowns))]
                for i in range(len(unknowns))]
    else:
        system = [[Fraction(0)] * len(unknowns) for _ in equations]
        for col, image in enumerate(images):
            for key, val in image.items():
                system[equations[key]][col] = val
        kernel = qq_matrix(system).nullspace().to_Matrix()
        null = [[from_qq(kernel[i, j]) for j in range(kernel.cols)]
                for i in range(kernel.rows)]
    out = []
    for vec in null:
        X = MatrixK.zeros(ring, rows, cols)
        for (a, b, d, k), c in zip(unknowns, vec):
            if c:
                X = X + MatrixK.monomial(ring, rows, cols, a, b, d,
                                         basis[k] * c)
        out.append(X)
    log.debug('kernel in window %s: %d unknowns, %d solutions', window,
              len(unknowns), len(out))
    return out


def qspan_rank(ring, mats):
    if not mats:
        return 0
    keys = {}
    for X in mats:
        for key in _flatten(ring, X):
            keys.setdefault(key, len(keys))
    if not keys:
        return 0
    rows = []
    for X in mats:
        row = [Fraction(0)] * len(keys)
        for key, val in _flatten(ring, X).items():
            row[keys[key]] = val
        rows.append(row)
    return qq_matrix(rows).rank()


def hom_space(M, N, window):
    """Hom(M, N) restricted to matrices supported in ``window``.

    Args:
        M, N (DiffModule or PureModule): source and target.
        window (tuple): inclusive degree bounds (d_lo, d_hi); an empty window
            (d_lo > d_hi) gives the zero space.

    Returns:
        HomSpace: basis over the coefficient ring (a generating set for
        quotient rings, flagged non-free on a rank defect), dimension over
        Q, freeness flag and window.
    """
    M, N = _as_module(M), _as_module(N)
    ring = M.ring
    if ring != N.ring:
        raise RingMismatch('modules over {} and {}'.format(ring, N.ring))
    shape = (N.n, M.n)
    if _is_rational_matrix(M.A) and _is_rational_matrix(N.A):
        basis = solve_kernel(M.q, N.A, M.A, shape, window, coords=1)
        return HomSpace(basis, len(basis) * ring.rank, True, tuple(window))
    vectors = solve_kernel(M.q, N.A, M.A, shape, window)
    gens = []
    span = []
    for v in vectors:
        if qspan_rank(ring, span + [v]) > qspan_rank(ring, span):
            gens.append(v)
            span.extend(v.scale(b) for b in ring.basis())
    free = len(vectors) == ring.rank * len(gens)
    if not free:
        log.warning('Hom solution module in window %s is not free: '
                    'Q-dimension %d, %d generators', window, len(vectors),
                    len(gens))
    return HomSpace(gens, len(vectors), free, tuple(window))


def hom_basis(M, N, window):
    """Basis of the morphisms M -> N supported in ``window``."""
    return hom_space(M, N, window).basis


def _regular(A0):
    """Regular representation over Q of a constant matrix (list of rows)."""
    ring = A0.ring
    n = ring.rank
    rows = [[Fraction(0)] * (A0.cols * n) for _ in range(A0.rows * n)]
    for i in range(A0.rows):
        for j in range(A0.cols):
            reg = ring.regular_matrix(A0[i, j].coeff(0))
            for a in range(n):
                for b in range(n):
                    rows[i * n + a][j * n + b] = reg[a, b]
    return rows


def _inf_norm(rows):
    return max(sum(abs(c) for c in row) for row in rows)


def _inverse_rows(rows):
    inv = qq_matrix(rows).inv().to_Matrix()
    return [[from_qq(inv[i, j]) for j in range(inv.cols)]
            for i in range(inv.rows)]


def default_hom_window(M, N):
    """Degree window containing the support of every morphism M -> N.

    Morphisms between pure modules of different slopes vanish, which gives
    the empty window (0, -1).  For equal slopes a degree-m coefficient F_m
    satisfies q^m F_m A = B F_m, so |q|^|m| is bounded by the ratio of
    eigenvalue moduli, itself bounded through infinity norms of the regular
    representations of A0 and its inverse.

    Args:
        M, N (PureModule): source and target.

    Returns:
        tuple: (d_lo, d_hi)
    """
    if M.slope != N.slope:
        return (0, -1)
    A = _regular(M.A0)
    B = _regular(N.A0)
    bound = max(_inf_norm(B) * _inf_norm(_inverse_rows(A)),
                _inf_norm(A) * _inf_norm(_inverse_rows(B)))
    base = abs(M.q.q)
    if base < 1:
        base = 1 / base
    D = 0
    while base ** (D + 1) <= bound:
        D += 1
    return (-D, D)
