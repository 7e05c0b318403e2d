"""Filtered presentations with fixed graded part and their normal forms.

A graded spec P_1 + ... + P_k (pure modules of strictly increasing slopes)
together with a family U = (U_ij), i < j, of r_i x r_j blocks presents the
block upper triangular module A_U with diagonal z^mu_i A_i.  The group of
block-unipotent gauges acts on these families; ``normal_form`` picks the
representative whose blocks all lie in the Ext windows [mu_i, mu_j - 1].

Block indices are 0-based throughout this module.
"""

from __future__ import print_function, division, absolute_import

import logging

import pandas as pd

from isograd import ext
from isograd.algebra import MatrixK
from isograd.diffmod import DiffModule, is_morphism
from isograd.exceptions import (RingMismatch, ShapeError, SpecMismatch,
                                Underflow, VerificationError)

log = logging.getLogger(__name__)


class GradedSpec(object):
    """Graded part P_1 + ... + P_k of a filtered module."""

    def __init__(self, q, blocks):
        """Initialize a graded spec.

        Args:
            q (DilationQ): dilation shared by every block.
            blocks (list): PureModule instances with strictly increasing
                slopes.

        Raises:
            ValueError: no blocks, or slopes not strictly increasing.
            RingMismatch: blocks over different rings or dilations.
        """
        blocks = list(blocks)
        if not blocks:
            raise ValueError('A graded spec needs at least one block.')
        ring = blocks[0].ring
        for P in blocks:
            if P.ring != ring or P.q != q:
                raise RingMismatch('graded blocks over different rings or '
                                   'dilations')
        slopes = [P.slope for P in blocks]
        if any(a >= b for a, b in zip(slopes, slopes[1:])):
            raise ValueError('Slopes must be strictly increasing, got '
                             '{}.'.format(slopes))
        self.q = q
        self.blocks = tuple(blocks)
        self.ring = ring

    @property
    def k(self):
        return len(self.blocks)

    @property
    def slopes(self):
        return [P.slope for P in self.blocks]

    @property
    def ranks(self):
        return [P.r for P in self.blocks]

    @property
    def n(self):
        return sum(self.ranks)

    @property
    def offsets(self):
        """Row offset of each block in the assembled matrix, plus n."""
        out = [0]
        for r in self.ranks:
            out.append(out[-1] + r)
        return out

    def pair(self, i, j):
        return ext.SylvesterPair(self.blocks[i], self.blocks[j])

    def pairs(self):
        """Index pairs (i, j), i < j, in lexicographic order."""
        return [(i, j) for i in range(self.k) for j in range(i + 1, self.k)]

    def block_shape(self, i, j):
        return (self.blocks[i].r, self.blocks[j].r)

    def __eq__(self, other):
        if not isinstance(other, GradedSpec):
            return NotImplemented
        return self.q == other.q and self.blocks == other.blocks

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.q, self.blocks))

    def __repr__(self):
        return 'GradedSpec(slopes={}, ranks={})'.format(self.slopes,
                                                        self.ranks)


def _check_blocks(spec, blocks, what):
    out = {}
    for (i, j), X in blocks.items():
        if not 0 <= i < j < spec.k:
            raise ShapeError('{} block ({}, {}) outside the strict upper '
                             'triangle of a {}-block spec'.format(what, i, j,
                                                                  spec.k))
        if X.shape != spec.block_shape(i, j):
            raise ShapeError('{} block ({}, {}) has shape {}, expected '
                             '{}'.format(what, i, j, X.shape,
                                         spec.block_shape(i, j)))
        if X.ring != spec.ring:
            raise RingMismatch('{} block over {}, spec over {}'.format(
                what, X.ring, spec.ring))
        if not X.is_zero():
            out[(i, j)] = X
    return out


class _BlockFamily(object):
    """Strict upper block family over a graded spec; missing blocks are 0."""

    _what = 'block'

    def __init__(self, spec, blocks=None):
        self.spec = spec
        self.blocks = _check_blocks(spec, dict(blocks or {}), self._what)

    def block(self, i, j):
        if (i, j) in self.blocks:
            return self.blocks[(i, j)]
        return MatrixK.zeros(self.spec.ring, *self.spec.block_shape(i, j))

    def items(self):
        """All (index, block) pairs, zero blocks included."""
        return [((i, j), self.block(i, j)) for i, j in self.spec.pairs()]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.spec == other.spec and self.blocks == other.blocks

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.spec, frozenset(self.blocks.items())))


class FilteredPresentation(_BlockFamily):
    """Point of F(P_1, ..., P_k): a graded spec plus blocks U_ij."""

    _what = 'presentation'

    def __repr__(self):
        return 'FilteredPresentation({!r}, blocks={})'.format(
            self.spec, sorted(self.blocks))


class UnipotentGauge(_BlockFamily):
    """Block-unipotent gauge F = I + sum X_ij E^(i,j)."""

    _what = 'gauge'

    @classmethod
    def identity(cls, spec):
        return cls(spec)

    def is_identity(self):
        return not self.blocks

    def matrix(self):
        """The assembled n x n matrix F."""
        spec = self.spec
        ring = spec.ring
        grid = []
        for a in range(spec.k):
            row = []
            for b in range(spec.k):
                if a == b:
                    row.append(MatrixK.identity(ring, spec.ranks[a]))
                elif a < b:
                    row.append(self.block(a, b))
                else:
                    row.append(MatrixK.zeros(ring, spec.ranks[a],
                                             spec.ranks[b]))
            grid.append(row)
        return MatrixK.assemble(ring, grid)

    @classmethod
    def from_matrix(cls, spec, F):
        """Read a gauge back from its matrix.

        Raises:
            SpecMismatch: F is not block unipotent for ``spec``.
        """
        ring = spec.ring
        diagonal = [MatrixK.identity(ring, r) for r in spec.ranks]
        return cls(spec, _read_upper(spec, F, diagonal, 'gauge'))

    def compose(self, other):
        """self o other, i.e. the matrix product F_self F_other."""
        if self.spec != other.spec:
            raise SpecMismatch('cannot compose gauges of different specs')
        return UnipotentGauge.from_matrix(self.spec,
                                          self.matrix() @ other.matrix())

    def inverse(self):
        """F^-1 = sum_m (-N)^m for the nilpotent strict part N = F - I."""
        spec = self.spec
        eye = MatrixK.identity(spec.ring, spec.n)
        minus_n = eye - self.matrix()
        acc = eye
        term = eye
        for _ in range(spec.k - 1):
            term = term @ minus_n
            acc = acc + term
        return UnipotentGauge.from_matrix(spec, acc)

    def __repr__(self):
        return 'UnipotentGauge({!r}, blocks={})'.format(self.spec,
                                                        sorted(self.blocks))


class NormalForm(object):
    """Window-supported presentation with the gauge that produced it.

    Attributes:
        source (FilteredPresentation): input presentation.
        presentation (FilteredPresentation): normalized presentation.
        gauge (UnipotentGauge): F with F[A_source] = A_presentation.
        stages (list): presentation after each super-diagonal stage.
    """

    def __init__(self, source, presentation, gauge, stages=None):
        self.source = source
        self.presentation = presentation
        self.gauge = gauge
        self.stages = list(stages or [])

    def verify(self):
        return act(self.gauge, self.source) == self.presentation

    def __repr__(self):
        return 'NormalForm({!r})'.format(self.presentation)


def _read_upper(spec, M, diagonal, what):
    if M.shape != (spec.n, spec.n):
        raise ShapeError('{} matrix of shape {} for a rank {} spec'.format(
            what, M.shape, spec.n))
    off = spec.offsets
    blocks = {}
    for a in range(spec.k):
        for b in range(spec.k):
            X = M.block(off[a], off[a + 1], off[b], off[b + 1])
            if a == b:
                if X != diagonal[a]:
                    raise SpecMismatch('diagonal block {} of the {} matrix does '
                                       'not match the graded spec'.format(
                                           a, what))
            elif a > b:
                if not X.is_zero():
                    raise SpecMismatch('{} matrix is not block upper '
                                       'triangular'.format(what))
            else:
                blocks[(a, b)] = X
    return blocks


def assemble(p):
    """The block upper triangular module A_U."""
    spec = p.spec
    ring = spec.ring
    grid = []
    for a in range(spec.k):
        row = []
        for b in range(spec.k):
            if a == b:
                row.append(spec.blocks[a].matrix)
            elif a < b:
                row.append(p.block(a, b))
            else:
                row.append(MatrixK.zeros(ring, spec.ranks[a], spec.ranks[b]))
        grid.append(row)
    return DiffModule(spec.q, MatrixK.assemble(ring, grid), check=False)


def from_matrix(spec, A):
    """Presentation of a block upper triangular matrix with diagonal A_0.

    Raises:
        SpecMismatch: wrong diagonal blocks or nonzero lower blocks.
    """
    diagonal = [P.matrix for P in spec.blocks]
    return FilteredPresentation(spec, _read_upper(spec, A, diagonal,
                                                  'presentation'))


def act(F, p):
    """The presentation V with A_V = (sigma F) A_U F^-1.

    Raises:
        SpecMismatch: F and p are over different graded specs.
    """
    if F.spec != p.spec:
        raise SpecMismatch('gauge and presentation have different specs')
    if F.is_identity():
        return p
    spec = p.spec
    Fm = F.matrix()
    A = assemble(p).A
    return from_matrix(spec, Fm.sigma(spec.q) @ A @ F.inverse().matrix())


def _single_gauge(spec, i, j, X):
    return UnipotentGauge(spec, {(i, j): X})


def normal_form(p, rng=None):
    """Window normal form by a super-diagonal sweep.

    Super-diagonals s = 1, ..., k-1 are processed in order.  Each block
    (i, i+s) is reduced against the pure pair (i, i+s) and the single-block
    gauge F = I - X E^(i,i+s) for the reduction certificate X is applied;
    its corrections only reach blocks of offset larger than s.

    Args:
        p (FilteredPresentation): input presentation.
        rng (numpy.random.Generator): when given, blocks within a stage are
            processed in a random order instead of left to right.

    Returns:
        NormalForm

    Raises:
        VerificationError: the accumulated gauge does not map p to the
            result.
    """
    spec = p.spec
    current = p
    total = UnipotentGauge.identity(spec)
    stages = []
    for s in range(1, spec.k):
        order = [(i, i + s) for i in range(spec.k - s)]
        if rng is not None:
            order = [order[m] for m in rng.permutation(len(order))]
        for i, j in order:
            cls = ext.reduce(spec.pair(i, j), current.block(i, j))
            if cls.certificate.is_zero():
                continue
            G = _single_gauge(spec, i, j, -cls.certificate)
            current = act(G, current)
            total = G.compose(total)
            log.debug('stage %d: reduced block (%d, %d)', s, i, j)
        stages.append(current)
    nf = NormalForm(p, current, total, stages)
    if not nf.verify():
        raise VerificationError('normal form gauge failed verification')
    return nf


def equivalent(p, p2):
    """Test gauge equivalence of two presentations.

    Returns:
        tuple: (bool, UnipotentGauge or None); the witness W satisfies
        act(W, p) = p2.

    Raises:
        SpecMismatch: the presentations have different graded specs.
    """
    if p.spec != p2.spec:
        raise SpecMismatch('presentations have different graded specs')
    nf = normal_form(p)
    nf2 = normal_form(p2)
    if nf.presentation != nf2.presentation:
        return False, None
    witness = nf2.gauge.inverse().compose(nf.gauge)
    if not is_morphism(witness.matrix(), assemble(p), assemble(p2)):
        raise VerificationError('equivalence witness failed verification')
    return True, witness


def moduli_dimension(spec):
    """sum_{i<j} r_i r_j (mu_j - mu_i)."""
    return sum(ext.delta(spec.pair(i, j)) for i, j in spec.pairs())


def delta_table(spec):
    """Per-pair Ext ranks as a DataFrame (1-based block labels)."""
    rows = []
    for i, j in spec.pairs():
        rows.append({'i': i + 1, 'j': j + 1,
                     'rank_i': spec.ranks[i], 'rank_j': spec.ranks[j],
                     'slope_i': spec.slopes[i], 'slope_j': spec.slopes[j],
                     'delta': ext.delta(spec.pair(i, j))})
    columns = ['i', 'j', 'rank_i', 'rank_j', 'slope_i', 'slope_j', 'delta']
    return pd.DataFrame(rows, columns=columns)


def truncate(p):
    """Drop P_k and the last block column.

    Raises:
        Underflow: p has a single graded block.
    """
    spec = p.spec
    if spec.k == 1:
        raise Underflow('cannot truncate a one-block presentation')
    sub = GradedSpec(spec.q, spec.blocks[:-1])
    return FilteredPresentation(sub, {(i, j): X for (i, j), X in
                                      p.blocks.items() if j < spec.k - 1})


def fiber_dimension(spec):
    """Dimension of the fibers of ``truncate``: sum_{i<k} delta_{i,k}."""
    if spec.k == 1:
        raise Underflow('a one-block spec has no truncation')
    last = spec.k - 1
    return sum(ext.delta(spec.pair(i, last)) for i in range(last))


def fiber(p_trunc, last, column=None):
    """Extend a presentation by a new last block P and a block column.

    Args:
        p_trunc (FilteredPresentation): presentation of P_1, ..., P_(k-1).
        last (PureModule): P_k.
        column (dict): block index i -> r_i x r_k block U_ik.

    Returns:
        FilteredPresentation
    """
    spec = GradedSpec(p_trunc.spec.q, p_trunc.spec.blocks + (last,))
    blocks = dict(p_trunc.blocks)
    k = spec.k - 1
    for i, X in (column or {}).items():
        blocks[(i, k)] = X
    return FilteredPresentation(spec, blocks)


def coordinates(p):
    """Window coordinates of the orbit of p, block pairs in lexicographic
    order."""
    nf = p if isinstance(p, NormalForm) else normal_form(p)
    spec = nf.presentation.spec
    out = []
    for i, j in spec.pairs():
        pair = spec.pair(i, j)
        out.extend(ext.coordinates(ext.ExtClass(
            pair, nf.presentation.block(i, j), nf.presentation.block(i, j),
            MatrixK.zeros(spec.ring, *pair.shape))))
    return out


def from_coordinates(spec, coords):
    """Normal presentation with the given window coordinates."""
    coords = list(coords)
    if len(coords) != moduli_dimension(spec):
        raise ShapeError('expected {} coordinates, got {}'.format(
            moduli_dimension(spec), len(coords)))
    blocks = {}
    pos = 0
    for i, j in spec.pairs():
        pair = spec.pair(i, j)
        size = ext.delta(pair)
        blocks[(i, j)] = ext.from_coordinates(pair,
                                              coords[pos:pos + size]).reduced
        pos += size
    return FilteredPresentation(spec, blocks)


def k2_bridge(p):
    """The Ext(P_2, P_1) class of a two-block presentation."""
    if p.spec.k != 2:
        raise ShapeError('expected a two-block presentation, got {} '
                         'blocks'.format(p.spec.k))
    return ext.reduce(p.spec.pair(0, 1), p.block(0, 1))
