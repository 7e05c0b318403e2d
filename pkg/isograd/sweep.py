"""Randomized verification sweeps.

A sweep draws random graded specs, presentations and gauges and checks, per
trial, the dimension count, the coordinate chart, the normal form
certificate, orbit invariance, the fiber dimension of truncation and
(optionally) base change.  Results are a pandas DataFrame, one row per trial.
"""

from __future__ import print_function, division, absolute_import

from fractions import Fraction
import logging

import numpy as np
import pandas as pd

from isograd import basechange
from isograd import moduli
from isograd import sampling
from isograd import utils
from isograd.algebra import CoeffRing, DilationQ
from isograd.fileio.cfg_io import read_sweep_cfg

log = logging.getLogger(__name__)

CHECKS = ('chart', 'certificate', 'orbit', 'fiber', 'truncate', 'basechange')


class Sweep(object):
    """Randomized checks over random graded specs."""

    def __init__(self, sweep_id='0', spec_args=None, sample_args=None,
                 checks_args=None, basechange_args=None):
        """Initialize a sweep.

        Args:
            sweep_id (str): sweep ID. Defaults to '0'.
            spec_args (dict): q, modulus (coefficient ring, [] for Q),
                k_max, max_rank, slopes ([low, high]).
            sample_args (dict): trials, seed, low_degree, high_degree,
                gauge_low, gauge_high.
            checks_args (dict): check name -> bool.
            basechange_args (dict): modulus and image_of_t of the base
                change target.
        """
        spec_args = utils.none_to_empty_dict(spec_args)
        sample_args = utils.none_to_empty_dict(sample_args)
        checks_args = utils.none_to_empty_dict(checks_args)
        basechange_args = utils.none_to_empty_dict(basechange_args)
        self.sweep_id = str(sweep_id)
        self.q = DilationQ(Fraction(str(spec_args.get('q', 2))))
        self.ring = CoeffRing(utils.parse_ring_modulus(
            spec_args.get('modulus')))
        self.k_max = int(spec_args.get('k_max', 4))
        self.max_rank = int(spec_args.get('max_rank', 3))
        self.slopes = tuple(int(s) for s in spec_args.get('slopes', [-3, 6]))
        if self.slopes[1] - self.slopes[0] + 1 < self.k_max:
            raise ValueError('Slope range {} is too small for k_max = '
                             '{}.'.format(self.slopes, self.k_max))
        self.n_trials = int(sample_args.get('trials', 20))
        self.seed = int(sample_args.get('seed', 0))
        self.degrees = (int(sample_args.get('low_degree', -2)),
                        int(sample_args.get('high_degree', 5)))
        self.gauge_degrees = (int(sample_args.get('gauge_low', -4)),
                              int(sample_args.get('gauge_high', 4)))
        self.checks = {name: True for name in CHECKS}
        for name, value in checks_args.items():
            if name not in self.checks:
                raise ValueError('Unknown check: {}.'.format(name))
            self.checks[name] = bool(value)
        self.phi = None
        target = utils.parse_ring_modulus(basechange_args.get('modulus'))
        if target is None:
            self.checks['basechange'] = False
        else:
            image = basechange_args.get('image_of_t')
            target_ring = CoeffRing(target)
            if image is not None:
                image = target_ring(utils.parse_ring_modulus(image))
            self.phi = basechange.RingMorphism(self.ring, target_ring, image)

    @classmethod
    def from_cfg(cls, file_in):
        """Sweep configured by a 'sweep<id>.cfg' file."""
        return cls(*read_sweep_cfg(file_in))

    def trial(self, rng, index):
        """Run every enabled check on one random spec.

        Returns:
            dict: one table row.
        """
        k = int(rng.integers(1, self.k_max + 1))
        spec = sampling.random_graded_spec(rng, self.q, self.ring, k,
                                           self.max_rank, self.slopes)
        p = sampling.random_presentation(rng, spec, *self.degrees)
        nf = moduli.normal_form(p)
        dim = moduli.moduli_dimension(spec)
        coords = moduli.coordinates(nf)
        row = {'trial': index, 'k': k,
               'ranks': ','.join(str(r) for r in spec.ranks),
               'slopes': ','.join(str(s) for s in spec.slopes),
               'dimension': dim, 'coordinates': len(coords)}
        if self.checks['chart']:
            target = [sampling.random_scalar(rng, self.ring)
                      for _ in range(dim)]
            image = moduli.from_coordinates(spec, target)
            row['chart'] = moduli.coordinates(image) == target
        if self.checks['certificate']:
            row['certificate'] = nf.verify()
        if self.checks['orbit']:
            F = sampling.random_gauge(rng, spec, *self.gauge_degrees)
            row['orbit'] = (moduli.normal_form(moduli.act(F, p)).presentation
                            == nf.presentation)
        if self.checks['fiber']:
            if k == 1:
                row['fiber'] = True
            else:
                trunc = moduli.normal_form(moduli.truncate(p))
                row['fiber'] = (len(coords) - len(moduli.coordinates(trunc))
                                == moduli.fiber_dimension(spec))
        if self.checks['truncate'] and k > 1:
            row['truncate'] = (moduli.truncate(nf.presentation)
                               == moduli.normal_form(
                                   moduli.truncate(p)).presentation)
        elif self.checks['truncate']:
            row['truncate'] = True
        if self.checks['basechange']:
            report = basechange.check_normal_form_basechange(self.phi, p)
            for i, j in spec.pairs():
                report.checks.extend(basechange.check_ext_basechange(
                    self.phi, spec.pair(i, j), samples=2,
                    degrees=self.degrees, rng=rng).checks)
            row['basechange'] = report.passed
        log.debug('trial %d: %s', index, row)
        return row

    def run(self):
        """Run all trials.

        Returns:
            DataFrame: one row per trial; a column per enabled check plus
            ``passed``.
        """
        rng = np.random.default_rng(self.seed)
        rows = [self.trial(rng, m) for m in range(self.n_trials)]
        df = pd.DataFrame(rows)
        enabled = [name for name in CHECKS if self.checks[name]]
        df['passed'] = df[enabled].all(axis=1) if enabled else True
        log.info('sweep %s: %d of %d trials passed', self.sweep_id,
                 int(df['passed'].sum()), len(df))
        return df
