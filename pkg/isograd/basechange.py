"""Extension of scalars along coefficient ring morphisms.

K' = C' (x)_C K is realized by applying a ring morphism C -> C' to every
coefficient; all modules here are free, so extending an object is replacing
its coefficient ring.  The ``check_*`` functions verify, at sample inputs,
that Ext and normal forms commute with this operation and that Hom maps into
the Hom of the extended modules.
"""

from __future__ import print_function, division, absolute_import

from functools import singledispatch
import logging

import numpy as np
import pandas as pd

from isograd import ext
from isograd import moduli
from isograd import sampling
from isograd.algebra import LaurentPoly, MatrixK
from isograd.diffmod import (DiffModule, PureModule, hom_space, is_morphism,
                             qspan_rank)
from isograd.exceptions import RingMismatch

log = logging.getLogger(__name__)


class RingMorphism(object):
    """Morphism of coefficient rings C -> C'.

    From the rationals the only morphism is the structural one.  From a
    quotient Q[t]/(p) a morphism is fixed by the image of t, which must be a
    root of p in the target.
    """

    def __init__(self, source, target, image_of_t=None):
        """Initialize a ring morphism.

        Args:
            source (CoeffRing): source ring C.
            target (CoeffRing): target ring C'.
            image_of_t: scalar of the target (quotient sources only).
                Defaults to t itself when source and target agree.

        Raises:
            RingMismatch: no morphism with this data exists.
        """
        self.source = source
        self.target = target
        if source.kind == 'Q':
            if image_of_t is not None:
                raise RingMismatch('the rationals have no generator to map')
            self.image_of_t = None
        else:
            if image_of_t is None:
                if source != target:
                    raise RingMismatch('a morphism out of {} needs the image '
                                       'of t'.format(source))
                image_of_t = target.generator()
            image_of_t = target(image_of_t)
            root = sum((image_of_t ** k * c for k, c in
                        enumerate(source.modulus)), target.zero())
            if root:
                raise RingMismatch('{} is not a root of the modulus of '
                                   '{}'.format(image_of_t, source))
            self.image_of_t = image_of_t
        self._powers = (() if self.image_of_t is None else
                        tuple(self.image_of_t ** k
                              for k in range(source.rank)))

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring)

    @classmethod
    def structural(cls, target):
        """The embedding Q -> C'."""
        return cls(target.rationals(), target)

    def is_identity(self):
        if self.source != self.target:
            return False
        return (self.image_of_t is None
                or self.image_of_t == self.target.generator())

    def apply(self, c):
        """phi(c) for a scalar c of the source."""
        coords = self.source.coordinates(c)
        if self.image_of_t is None:
            return self.target(coords[0])
        out = self.target.zero()
        for ck, power in zip(coords, self._powers):
            if ck:
                out = out + power * ck
        return out

    __call__ = apply

    def compose(self, other):
        """self o other: first ``other``, then ``self``."""
        if other.target != self.source:
            raise RingMismatch('cannot compose {} -> {} after {} -> {}'.format(
                self.source, self.target, other.source, other.target))
        image = (None if other.image_of_t is None
                 else self.apply(other.image_of_t))
        return RingMorphism(other.source, self.target, image)

    def __eq__(self, other):
        if not isinstance(other, RingMorphism):
            return NotImplemented
        return ((self.source, self.target, self.image_of_t)
                == (other.source, other.target, other.image_of_t))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.source, self.target, self.image_of_t))

    def __repr__(self):
        return 'RingMorphism({} -> {}, t -> {})'.format(
            self.source, self.target, self.image_of_t)


def _check_source(phi, ring):
    if ring != phi.source:
        raise RingMismatch('object over {}, morphism from {}'.format(
            ring, phi.source))


def extend(phi, x):
    """Extend scalars of ``x`` along ``phi``.

    Args:
        phi (RingMorphism): morphism from the coefficient ring of x.
        x: LaurentPoly, MatrixK, DiffModule, PureModule, SylvesterPair,
            ExtClass, GradedSpec, FilteredPresentation or UnipotentGauge.

    Returns:
        the same kind of object over phi.target.

    Raises:
        RingMismatch: x is not over phi.source.
    """
    return _extend(x, phi)


@singledispatch
def _extend(x, phi):
    raise TypeError('cannot extend scalars of {!r}'.format(x))


@_extend.register(LaurentPoly)
def _(x, phi):
    _check_source(phi, x.ring)
    return x.map_coefficients(phi.apply, phi.target)


@_extend.register(MatrixK)
def _(x, phi):
    _check_source(phi, x.ring)
    return x.map_coefficients(phi.apply, phi.target)


@_extend.register(DiffModule)
def _(x, phi):
    return DiffModule(x.q, extend(phi, x.A), check=False)


@_extend.register(PureModule)
def _(x, phi):
    return PureModule(x.q, x.slope, extend(phi, x.A0))


@_extend.register(ext.SylvesterPair)
def _(x, phi):
    return ext.SylvesterPair(extend(phi, x.sub), extend(phi, x.quot))


@_extend.register(ext.ExtClass)
def _(x, phi):
    return ext.ExtClass(extend(phi, x.pair), extend(phi, x.rep),
                        extend(phi, x.reduced), extend(phi, x.certificate))


@_extend.register(moduli.GradedSpec)
def _(x, phi):
    return moduli.GradedSpec(x.q, [extend(phi, P) for P in x.blocks])


@_extend.register(moduli.FilteredPresentation)
def _(x, phi):
    return moduli.FilteredPresentation(
        extend(phi, x.spec), {key: extend(phi, X) for key, X in
                              x.blocks.items()})


@_extend.register(moduli.UnipotentGauge)
def _(x, phi):
    return moduli.UnipotentGauge(
        extend(phi, x.spec), {key: extend(phi, X) for key, X in
                              x.blocks.items()})


class BasechangeReport(object):
    """Outcome of a base change verification, one entry per check."""

    def __init__(self, subject, morphism):
        self.subject = subject
        self.morphism = morphism
        self.checks = []

    def add(self, name, passed, detail=''):
        self.checks.append({'check': name, 'passed': bool(passed),
                            'detail': detail})
        if not passed:
            log.warning('base change check %s failed for %s: %s', name,
                        self.subject, detail)

    @property
    def passed(self):
        return all(c['passed'] for c in self.checks)

    def to_frame(self):
        return pd.DataFrame(self.checks, columns=['check', 'passed',
                                                  'detail'])

    def to_dict(self):
        return {'subject': self.subject, 'passed': self.passed,
                'checks': [dict(c) for c in self.checks]}


def _rng(rng, seed):
    return rng if rng is not None else np.random.default_rng(seed)


def check_ext_basechange(phi, pair, samples=20, degrees=(-6, 10), rng=None,
                         seed=0):
    """Verify that Ext(P_j, P_i) commutes with extension along phi.

    Checks that delta agrees on both sides, that reduction commutes with
    extension on random representatives, and that the image of the window
    basis is the window basis of the extended pair, made of fixed points of
    the extended reduction.

    Args:
        phi (RingMorphism): morphism from the pair's coefficient ring.
        pair (SylvesterPair): pure pair over phi.source.
        samples (int): number of random representatives.
        degrees (tuple): inclusive degree range of the representatives.
        rng (numpy.random.Generator): random source; built from ``seed``
            when omitted.
        seed (int): seed of the default generator.

    Returns:
        BasechangeReport
    """
    rng = _rng(rng, seed)
    report = BasechangeReport('ext({}, {})'.format(pair.sub.slope,
                                                   pair.quot.slope), phi)
    target = extend(phi, pair)
    report.add('delta', ext.delta(pair) == ext.delta(target),
               '{} -> {}'.format(ext.delta(pair), ext.delta(target)))
    failures = 0
    for _ in range(samples):
        U = sampling.random_matrix(rng, pair.ring, *pair.shape,
                                   low=degrees[0], high=degrees[1])
        lhs = extend(phi, ext.reduce(pair, U).reduced)
        rhs = ext.reduce(target, extend(phi, U)).reduced
        if lhs != rhs:
            failures += 1
    report.add('reduce-commutes', failures == 0,
               '{} of {} samples differ'.format(failures, samples))
    images = [extend(phi, E) for E in ext.ext_basis(pair)]
    basis = ext.ext_basis(target)
    fixed = all(ext.reduce(target, E).reduced == E for E in basis)
    report.add('free-basis', images == basis and fixed,
               '{} basis elements'.format(len(basis)))
    return report


def check_hom_basechange(phi, M, N, window):
    """Verify that C' (x) Hom(M, N) maps onto Hom(C' (x) M, C' (x) N).

    Every extended source basis element must be a morphism over the target;
    the report also records whether the images span the target solutions in
    the same window.  Injectivity is not asserted.

    Returns:
        BasechangeReport
    """
    report = BasechangeReport('hom', phi)
    source = hom_space(M, N, window)
    Mt, Nt = extend(phi, M), extend(phi, N)
    images = [extend(phi, F) for F in source.basis]
    report.add('morphisms', all(is_morphism(F, Mt, Nt) for F in images),
               '{} source generators'.format(len(images)))
    target = hom_space(Mt, Nt, window)
    span = [F.scale(b) for F in images for b in phi.target.basis()]
    spanned = qspan_rank(phi.target, span)
    report.add('onto', spanned == target.qdim,
               'images span {} of {} target dimensions over Q'.format(
                   spanned, target.qdim))
    return report


def check_normal_form_basechange(phi, p):
    """Verify normal_form(extend(p)) = extend(normal_form(p))."""
    report = BasechangeReport('normal-form', phi)
    lhs = extend(phi, moduli.normal_form(p).presentation)
    rhs = moduli.normal_form(extend(phi, p)).presentation
    report.add('normal-form-commutes', lhs == rhs,
               '{} blocks'.format(len(p.spec.pairs())))
    return report
