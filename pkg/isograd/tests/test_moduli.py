from __future__ import print_function, division, absolute_import

from fractions import Fraction
import itertools
import unittest

import numpy as np

from isograd import diffmod
from isograd import ext
from isograd import moduli
from isograd import sampling
from isograd.algebra import CoeffRing, DilationQ, LaurentPoly, MatrixK
from isograd.diffmod import PureModule
from isograd.exceptions import ShapeError, SpecMismatch, Underflow
from isograd.moduli import FilteredPresentation, GradedSpec, UnipotentGauge

QQ = CoeffRing.rationals()
Q2 = DilationQ(2)


def z(d=1, c=1, ring=QQ):
    return LaurentPoly.monomial(ring, c, d)


def m(f):
    return MatrixK(QQ, [[f]])


def scalar_spec(*slopes):
    return GradedSpec(Q2, [PureModule(Q2, mu, MatrixK(QQ, [[1]]))
                           for mu in slopes])


class GradedSpecTestCase(unittest.TestCase):
    """Tests from 'moduli.py': graded specs and dimension counts."""

    def test_slopes_must_increase(self):
        with self.assertRaises(ValueError):
            scalar_spec(0, 2, 2)
        with self.assertRaises(ValueError):
            GradedSpec(Q2, [])

    def test_dimensions(self):
        self.assertEqual(moduli.moduli_dimension(scalar_spec(0, 2)), 2)
        self.assertEqual(moduli.moduli_dimension(scalar_spec(0, 1, 3)), 6)
        self.assertEqual(moduli.moduli_dimension(scalar_spec(1)), 0)

    def test_dimension_with_ranks(self):
        spec = GradedSpec(Q2, [PureModule(Q2, 0, MatrixK(QQ, [[1, 1],
                                                               [0, 2]])),
                               PureModule(Q2, 1, MatrixK(QQ, [[-1]]))])
        self.assertEqual(moduli.moduli_dimension(spec), 2)
        self.assertEqual(spec.offsets, [0, 2, 3])

    def test_delta_table(self):
        df = moduli.delta_table(scalar_spec(0, 1, 3))
        self.assertEqual(list(df['delta']), [1, 3, 2])
        self.assertEqual(list(df['i']), [1, 1, 2])
        self.assertEqual(list(df['j']), [2, 3, 3])
        self.assertEqual(df['delta'].sum(), 6)


class PresentationTestCase(unittest.TestCase):
    """Tests from 'moduli.py': presentations and the gauge action."""

    def setUp(self):
        self.spec = scalar_spec(0, 2)

    def test_assemble(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(1)})
        self.assertEqual(moduli.assemble(p).A,
                         MatrixK(QQ, [[1, 1], [0, z(2)]]))

    def test_zero_blocks_dropped(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(0)})
        self.assertEqual(p, FilteredPresentation(self.spec))

    def test_block_outside_triangle(self):
        with self.assertRaises(ShapeError):
            FilteredPresentation(self.spec, {(1, 0): m(1)})

    def test_from_matrix(self):
        A = MatrixK(QQ, [[1, z(5)], [0, z(2)]])
        p = moduli.from_matrix(self.spec, A)
        self.assertEqual(p.block(0, 1), m(z(5)))
        with self.assertRaises(SpecMismatch):
            moduli.from_matrix(self.spec, MatrixK(QQ, [[1, 0], [1, z(2)]]))
        with self.assertRaises(SpecMismatch):
            moduli.from_matrix(self.spec, MatrixK(QQ, [[2, 0], [0, z(2)]]))

    def test_act(self):
        F = UnipotentGauge(self.spec, {(0, 1): m(1)})
        V = moduli.act(F, FilteredPresentation(self.spec))
        self.assertEqual(V.block(0, 1), m(z(2) - 1))

    def test_act_is_morphism(self):
        rng = np.random.default_rng(1)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
        p = sampling.random_presentation(rng, spec)
        F = sampling.random_gauge(rng, spec)
        V = moduli.act(F, p)
        self.assertTrue(diffmod.is_morphism(F.matrix(), moduli.assemble(p),
                                            moduli.assemble(V)))

    def test_act_composition(self):
        rng = np.random.default_rng(4)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
        p = sampling.random_presentation(rng, spec)
        F = sampling.random_gauge(rng, spec)
        G = sampling.random_gauge(rng, spec)
        self.assertEqual(moduli.act(G, moduli.act(F, p)),
                         moduli.act(G.compose(F), p))

    def test_act_spec_mismatch(self):
        F = UnipotentGauge.identity(scalar_spec(0, 3))
        with self.assertRaises(SpecMismatch):
            moduli.act(F, FilteredPresentation(self.spec))

    def test_gauge_inverse(self):
        rng = np.random.default_rng(9)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 4, max_rank=2)
        F = sampling.random_gauge(rng, spec)
        self.assertTrue(F.compose(F.inverse()).is_identity())
        self.assertTrue(F.inverse().compose(F).is_identity())

    def test_gauge_from_matrix(self):
        with self.assertRaises(SpecMismatch):
            UnipotentGauge.from_matrix(self.spec,
                                       MatrixK(QQ, [[1, 0], [0, 2]]))


class NormalFormTestCase(unittest.TestCase):
    """Tests from 'moduli.py': normal forms and equivalence."""

    def setUp(self):
        self.spec = scalar_spec(0, 2)

    def test_normal_form_scalar(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(z(3))})
        nf = moduli.normal_form(p)
        self.assertEqual(nf.presentation.block(0, 1),
                         m(z(1, Fraction(1, 2))))
        self.assertEqual(nf.gauge.block(0, 1), m(z(1, Fraction(-1, 2))))
        self.assertTrue(nf.verify())

    def test_window_presentation_is_normal(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(z() - 2)})
        nf = moduli.normal_form(p)
        self.assertEqual(nf.presentation, p)
        self.assertTrue(nf.gauge.is_identity())

    def test_blocks_in_window(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            k = int(rng.integers(2, 5))
            spec = sampling.random_graded_spec(rng, Q2, QQ, k, max_rank=3)
            nf = moduli.normal_form(sampling.random_presentation(rng, spec))
            self.assertTrue(nf.verify())
            for (i, j), X in nf.presentation.items():
                bounds = X.degree_range()
                if bounds is not None:
                    self.assertTrue(spec.slopes[i] <= bounds[0])
                    self.assertTrue(bounds[1] < spec.slopes[j])

    def test_stages(self):
        rng = np.random.default_rng(6)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 4, max_rank=1)
        nf = moduli.normal_form(sampling.random_presentation(rng, spec))
        self.assertEqual(len(nf.stages), 3)
        self.assertEqual(nf.stages[-1], nf.presentation)
        for s, stage in enumerate(nf.stages, start=1):
            for i in range(spec.k - s):
                self.assertEqual(stage.block(i, i + s),
                                 nf.presentation.block(i, i + s))

    def test_orbit_invariance(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            k = int(rng.integers(1, 4))
            spec = sampling.random_graded_spec(rng, Q2, QQ, k, max_rank=2)
            p = sampling.random_presentation(rng, spec)
            F = sampling.random_gauge(rng, spec)
            self.assertEqual(moduli.normal_form(moduli.act(F, p)).presentation,
                             moduli.normal_form(p).presentation)

    def test_order_within_stage(self):
        rng = np.random.default_rng(8)
        spec = sampling.random_graded_spec(rng, DilationQ('-1/2'), QQ, 4)
        p = sampling.random_presentation(rng, spec)
        nf = moduli.normal_form(p)
        for seed in range(3):
            shuffled = moduli.normal_form(p, rng=np.random.default_rng(seed))
            self.assertEqual(shuffled.presentation, nf.presentation)
            self.assertTrue(shuffled.verify())

    def test_equivalent(self):
        rng = np.random.default_rng(10)
        spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
        p = sampling.random_presentation(rng, spec)
        p2 = moduli.act(sampling.random_gauge(rng, spec), p)
        same, witness = moduli.equivalent(p, p2)
        self.assertTrue(same)
        self.assertEqual(moduli.act(witness, p), p2)

    def test_not_equivalent(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(1)})
        same, witness = moduli.equivalent(p, FilteredPresentation(self.spec))
        self.assertFalse(same)
        self.assertIsNone(witness)

    def test_equivalent_spec_mismatch(self):
        with self.assertRaises(SpecMismatch):
            moduli.equivalent(FilteredPresentation(self.spec),
                              FilteredPresentation(scalar_spec(0, 3)))

    def test_two_block_grid(self):
        # window coefficients give pairwise inequivalent presentations
        values = [-1, 0, 1, Fraction(1, 2)]
        points = []
        for c0, c1 in itertools.product(values, repeat=2):
            p = FilteredPresentation(self.spec, {(0, 1): m(c0 + z(1, c1))})
            self.assertEqual(moduli.coordinates(p), [c0, c1])
            self.assertTrue(ext.reduce(self.spec.pair(0, 1),
                                       p.block(0, 1)).verify())
            points.append(p)
        for a, b in itertools.combinations(points, 2):
            self.assertFalse(moduli.equivalent(a, b)[0])

    def test_k2_bridge(self):
        p = FilteredPresentation(self.spec, {(0, 1): m(z(3))})
        cls = moduli.k2_bridge(p)
        self.assertEqual(cls.reduced, moduli.normal_form(p).presentation.block(
            0, 1))
        with self.assertRaises(ShapeError):
            moduli.k2_bridge(FilteredPresentation(scalar_spec(0, 1, 2)))


class ChartTestCase(unittest.TestCase):
    """Tests from 'moduli.py': coordinates, truncation and fibers."""

    def test_coordinates_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
            coords = [sampling.random_rational(rng)
                      for _ in range(moduli.moduli_dimension(spec))]
            p = moduli.from_coordinates(spec, coords)
            self.assertEqual(moduli.coordinates(p), coords)

    def test_from_coordinates_length(self):
        with self.assertRaises(ShapeError):
            moduli.from_coordinates(scalar_spec(0, 2), [1])

    def test_truncate(self):
        spec = scalar_spec(0, 1, 3)
        p = FilteredPresentation(spec, {(0, 1): m(z()), (0, 2): m(1),
                                        (1, 2): m(z(2))})
        t = moduli.truncate(p)
        self.assertEqual(t.spec, scalar_spec(0, 1))
        self.assertEqual(t.blocks, {(0, 1): m(z())})
        with self.assertRaises(Underflow):
            moduli.truncate(FilteredPresentation(scalar_spec(0)))

    def test_truncate_commutes_with_normal_form(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            spec = sampling.random_graded_spec(rng, Q2, QQ, 3)
            p = sampling.random_presentation(rng, spec)
            self.assertEqual(
                moduli.truncate(moduli.normal_form(p).presentation),
                moduli.normal_form(moduli.truncate(p)).presentation)

    def test_fiber_dimension(self):
        self.assertEqual(moduli.fiber_dimension(scalar_spec(0, 1, 3)), 5)
        with self.assertRaises(Underflow):
            moduli.fiber_dimension(scalar_spec(0))

    def test_fiber(self):
        spec = scalar_spec(0, 1, 3)
        p = FilteredPresentation(spec, {(0, 1): m(1), (0, 2): m(z()),
                                        (1, 2): m(z(2))})
        t = moduli.truncate(p)
        rebuilt = moduli.fiber(t, spec.blocks[-1], {0: m(z()), 1: m(z(2))})
        self.assertEqual(rebuilt, p)
        self.assertEqual(moduli.truncate(rebuilt), t)

    def test_fiber_dimension_counts_coordinates(self):
        spec = scalar_spec(-1, 1, 2, 4)
        total = moduli.moduli_dimension(spec)
        sub = moduli.moduli_dimension(GradedSpec(Q2, spec.blocks[:-1]))
        self.assertEqual(total - sub, moduli.fiber_dimension(spec))
        rng = np.random.default_rng(21)
        for _ in range(20):
            k = int(rng.integers(2, 5))
            spec = sampling.random_graded_spec(rng, Q2, QQ, k, max_rank=3)
            p = sampling.random_presentation(rng, spec)
            full = moduli.coordinates(p)
            trunc = moduli.coordinates(moduli.truncate(p))
            self.assertEqual(len(full), moduli.moduli_dimension(spec))
            self.assertEqual(len(full) - len(trunc),
                             moduli.fiber_dimension(spec))


if __name__ == '__main__':
    unittest.main()
