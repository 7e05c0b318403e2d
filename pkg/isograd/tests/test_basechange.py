from __future__ import print_function, division, absolute_import

from fractions import Fraction
import unittest

import numpy as np

from isograd import basechange
from isograd import ext
from isograd import moduli
from isograd import sampling
from isograd.algebra import CoeffRing, DilationQ, LaurentPoly, MatrixK
from isograd.basechange import RingMorphism
from isograd.diffmod import PureModule
from isograd.exceptions import RingMismatch

QQ = CoeffRing.rationals()
DUAL = CoeffRing.quotient([0, 0, 1])
CUBE_ROOT = CoeffRing.quotient([-2, 0, 0, 1])
SIXTH_ROOT = CoeffRing.quotient([-2, 0, 0, 0, 0, 0, 1])
Q2 = DilationQ(2)


def z(d=1, c=1, ring=QQ):
    return LaurentPoly.monomial(ring, c, d)


class RingMorphismTestCase(unittest.TestCase):
    """Tests from 'basechange.py': coefficient ring morphisms."""

    def test_structural(self):
        phi = RingMorphism.structural(DUAL)
        self.assertEqual(phi(Fraction(3, 2)), DUAL(Fraction(3, 2)))
        self.assertFalse(phi.is_identity())

    def test_identity(self):
        phi = RingMorphism.identity(CUBE_ROOT)
        self.assertTrue(phi.is_identity())
        x = CUBE_ROOT([1, 2, 3])
        self.assertEqual(phi(x), x)

    def test_retraction(self):
        phi = RingMorphism(DUAL, QQ, 0)
        self.assertEqual(phi(DUAL([5, 7])), 5)

    def test_image_must_be_root(self):
        with self.assertRaises(RingMismatch):
            RingMorphism(DUAL, QQ, 1)
        with self.assertRaises(RingMismatch):
            RingMorphism(CUBE_ROOT, QQ)
        with self.assertRaises(RingMismatch):
            RingMorphism(QQ, DUAL, DUAL.generator())

    def test_compose(self):
        s = SIXTH_ROOT.generator()
        psi = RingMorphism(CUBE_ROOT, SIXTH_ROOT, s ** 2)
        t = CUBE_ROOT.generator()
        self.assertEqual(psi(t) ** 3, 2)
        chi = psi.compose(RingMorphism.structural(CUBE_ROOT))
        self.assertEqual(chi, RingMorphism.structural(SIXTH_ROOT))
        with self.assertRaises(RingMismatch):
            RingMorphism.structural(CUBE_ROOT).compose(psi)

    def test_extend_laurent(self):
        phi = RingMorphism(DUAL, QQ, 0)
        t = DUAL.generator()
        f = LaurentPoly(DUAL, {0: 1 + t, 2: t})
        self.assertEqual(basechange.extend(phi, f), LaurentPoly.one(QQ))

    def test_extend_contracts(self):
        rng = np.random.default_rng(25)
        phi = RingMorphism.structural(CUBE_ROOT)
        psi = RingMorphism(CUBE_ROOT, SIXTH_ROOT, SIXTH_ROOT.generator() ** 2)
        chi = psi.compose(phi)
        for _ in range(50):
            X = sampling.random_matrix(rng, QQ, 2, 2, -6, 10)
            self.assertEqual(basechange.extend(chi, X),
                             basechange.extend(psi, basechange.extend(phi, X)))
        for _ in range(5):
            spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
            p = sampling.random_presentation(rng, spec)
            F = sampling.random_gauge(rng, spec)
            for x in (p, F):
                self.assertEqual(
                    basechange.extend(chi, x),
                    basechange.extend(psi, basechange.extend(phi, x)))

    def test_extend_wrong_source(self):
        with self.assertRaises(RingMismatch):
            basechange.extend(RingMorphism.structural(DUAL),
                              z(ring=CUBE_ROOT))
        with self.assertRaises(TypeError):
            basechange.extend(RingMorphism.structural(DUAL), 'z')


class BasechangeCheckTestCase(unittest.TestCase):
    """Tests from 'basechange.py': compatibility checks."""

    def test_ext_structural(self):
        pair = ext.SylvesterPair(PureModule(Q2, 0, MatrixK(QQ, [[1]])),
                                 PureModule(Q2, 2, MatrixK(QQ, [[1]])))
        report = basechange.check_ext_basechange(
            RingMorphism.structural(DUAL), pair, samples=50)
        self.assertTrue(report.passed)
        self.assertEqual([c['check'] for c in report.checks],
                         ['delta', 'reduce-commutes', 'free-basis'])

    def test_ext_cube_root(self):
        rng = np.random.default_rng(24)
        phi = RingMorphism.structural(CUBE_ROOT)
        for _ in range(5):
            mu_i, mu_j = sorted(int(s) for s in rng.choice(np.arange(-3, 4),
                                                            size=2,
                                                            replace=False))
            pair = ext.SylvesterPair(
                sampling.random_pure(rng, Q2, QQ, mu_i, 2),
                sampling.random_pure(rng, Q2, QQ, mu_j, 1))
            report = basechange.check_ext_basechange(phi, pair, samples=10,
                                                     rng=rng)
            self.assertTrue(report.passed)

    def test_ext_ranks(self):
        rng = np.random.default_rng(21)
        pair = ext.SylvesterPair(sampling.random_pure(rng, Q2, QQ, 0, 2),
                                 sampling.random_pure(rng, Q2, QQ, 1, 1))
        phi = RingMorphism.structural(CoeffRing.quotient([0, 0, 0, 1]))
        report = basechange.check_ext_basechange(phi, pair, samples=50,
                                                 rng=rng)
        self.assertTrue(report.passed)

    def test_ext_contraction(self):
        q = DilationQ(Fraction(1, 3))
        t = CUBE_ROOT.generator()
        pair = ext.SylvesterPair(
            PureModule(q, -1, MatrixK(CUBE_ROOT, [[t]])),
            PureModule(q, 1, MatrixK(CUBE_ROOT, [[1 + t]])))
        phi = RingMorphism(CUBE_ROOT, SIXTH_ROOT,
                           SIXTH_ROOT.generator() ** 2)
        report = basechange.check_ext_basechange(phi, pair, samples=50)
        self.assertTrue(report.passed)

    def test_hom_structural(self):
        M = PureModule(Q2, 1, MatrixK(QQ, [[1]]))
        N = PureModule(Q2, 1, MatrixK(QQ, [[4]]))
        report = basechange.check_hom_basechange(
            RingMorphism.structural(CUBE_ROOT), M, N, (-2, 2))
        self.assertTrue(report.passed)

    def test_hom_retraction_not_onto(self):
        t = DUAL.generator()
        M = PureModule(Q2, 0, MatrixK(DUAL, [[1 + t]]))
        N = PureModule(Q2, 0, MatrixK(DUAL, [[1]]))
        report = basechange.check_hom_basechange(RingMorphism(DUAL, QQ, 0),
                                                 M, N, (-2, 2))
        df = report.to_frame()
        self.assertEqual(list(df['check']), ['morphisms', 'onto'])
        self.assertEqual(list(df['passed']), [True, False])
        self.assertFalse(report.to_dict()['passed'])

    def test_normal_form(self):
        rng = np.random.default_rng(22)
        spec = sampling.random_graded_spec(rng, Q2, DUAL, 3)
        p = sampling.random_presentation(rng, spec)
        report = basechange.check_normal_form_basechange(
            RingMorphism(DUAL, QQ, 0), p)
        self.assertTrue(report.passed)

    def test_extend_presentation(self):
        rng = np.random.default_rng(23)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
        p = sampling.random_presentation(rng, spec)
        F = sampling.random_gauge(rng, spec)
        phi = RingMorphism.structural(DUAL)
        self.assertEqual(basechange.extend(phi, moduli.act(F, p)),
                         moduli.act(basechange.extend(phi, F),
                                    basechange.extend(phi, p)))


if __name__ == '__main__':
    unittest.main()
