from __future__ import print_function, division, absolute_import

import os
from os.path import join
import unittest

from isograd.algebra import CoeffRing
from isograd.sweep import CHECKS, Sweep

PATH_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))))


class SweepTestCase(unittest.TestCase):
    """Tests from 'sweep.py'."""

    def test_run(self):
        sweep = Sweep('t', spec_args={'q': 2, 'modulus': [], 'k_max': 3,
                                      'max_rank': 2, 'slopes': [-2, 3]},
                      sample_args={'trials': 4, 'seed': 3},
                      basechange_args={'modulus': [0, 0, 1]})
        df = sweep.run()
        self.assertEqual(len(df), 4)
        for name in CHECKS:
            self.assertIn(name, df.columns)
        self.assertTrue(df['passed'].all())

    def test_from_cfg(self):
        sweep = Sweep.from_cfg(join(PATH_ROOT, 'config', 'sweep1.cfg'))
        self.assertEqual(sweep.sweep_id, '1')
        self.assertEqual(sweep.ring, CoeffRing.quotient([-2, 0, 0, 1]))
        self.assertEqual(sweep.n_trials, 10)
        self.assertFalse(sweep.checks['basechange'])

    def test_quotient_ring_sweep(self):
        sweep = Sweep('u', spec_args={'q': '-1/2', 'modulus': [-2, 0, 0, 1],
                                      'k_max': 2, 'max_rank': 1,
                                      'slopes': [0, 3]},
                      sample_args={'trials': 3, 'seed': 5},
                      checks_args={'orbit': False})
        df = sweep.run()
        self.assertNotIn('orbit', df.columns)
        self.assertTrue(df['passed'].all())

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            Sweep(checks_args={'speed': True})
        with self.assertRaises(ValueError):
            Sweep(spec_args={'k_max': 5, 'slopes': [0, 2]})


if __name__ == '__main__':
    unittest.main()
