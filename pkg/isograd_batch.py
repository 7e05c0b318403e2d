"""Batch driver for verification sweeps.

Command line args:
    config file that starts with "sweep".

Usage:
    python isograd_batch.py config/sweep0.cfg

Or write and run a new config from Python::

    import isograd_batch as ib
    ib.SweepModel('sweep5.cfg', modulus=[-2, 0, 0, 1], trials=50).run()
"""

from __future__ import print_function, division, absolute_import

import logging
import os
from os.path import join
import sys

from isograd import utils
from isograd.fileio.txt_io import txt_write
from isograd.sweep import Sweep

log = logging.getLogger(__name__)

PATH_ROOT = os.path.abspath(os.path.dirname(__file__))


class SweepModel(object):
    def __init__(self, filename, **kwargs):
        self.filename = filename
        self.initialize_model(**kwargs)

    def initialize_model(self, q='2', modulus=None, k_max=4, max_rank=3,
                         slopes=(-3, 6), trials=20, seed=0, low_degree=-2,
                         high_degree=5, gauge_low=-4, gauge_high=4,
                         target_modulus=None, image_of_t=None):
        self.q = q
        self.modulus = modulus
        self.k_max = k_max
        self.max_rank = max_rank
        self.slopes = list(slopes)
        self.trials = trials
        self.seed = seed
        self.low_degree = low_degree
        self.high_degree = high_degree
        self.gauge_low = gauge_low
        self.gauge_high = gauge_high
        self.target_modulus = target_modulus
        self.image_of_t = image_of_t

    @staticmethod
    def _fmt(value):
        if value is None:
            return '[]'
        if isinstance(value, (list, tuple)):
            return '[' + ', '.join(str(v) for v in value) + ']'
        return str(value)

    def write_config(self):
        path = join(PATH_ROOT, 'config', self.filename)
        with open(path, 'w') as outfile:
            print('# Sweep', file=outfile)
            print('', file=outfile)
            print('# Graded specs', file=outfile)
            print('spec_q = {}'.format(self.q), file=outfile)
            print('spec_modulus = {}'.format(self._fmt(self.modulus)),
                  file=outfile)
            print('spec_k_max = {}'.format(self.k_max), file=outfile)
            print('spec_max_rank = {}'.format(self.max_rank), file=outfile)
            print('spec_slopes = {}'.format(self._fmt(self.slopes)),
                  file=outfile)
            print('', file=outfile)
            print('# Samples', file=outfile)
            print('sample_trials = {}'.format(self.trials), file=outfile)
            print('sample_seed = {}'.format(self.seed), file=outfile)
            print('sample_low_degree = {}'.format(self.low_degree),
                  file=outfile)
            print('sample_high_degree = {}'.format(self.high_degree),
                  file=outfile)
            print('sample_gauge_low = {}'.format(self.gauge_low), file=outfile)
            print('sample_gauge_high = {}'.format(self.gauge_high),
                  file=outfile)
            if self.target_modulus is not None:
                print('', file=outfile)
                print('# Base change', file=outfile)
                print('basechange_modulus = {}'.format(
                    self._fmt(self.target_modulus)), file=outfile)
                if self.image_of_t is not None:
                    print('basechange_image_of_t = {}'.format(
                        self._fmt(self.image_of_t)), file=outfile)
        return path

    def run(self):
        return run_sweep(self.write_config())


def run_sweep(file_in):
    """Run the sweep configured in ``file_in`` and write its table.

    Returns:
        DataFrame
    """
    sweep = Sweep.from_cfg(file_in)
    df = sweep.run()
    path_out = utils.substitute_dir_in_path(os.path.dirname(
        os.path.abspath(file_in)), 'config', 'output')
    fname = txt_write(path_out, sweep.sweep_id, df)
    log.info('wrote %s', fname)
    return df


if __name__ == '__main__':
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')
    default_config_path = join(PATH_ROOT, 'config')
    try:
        fname, path_config = utils.set_path(sys.argv[1], default_config_path)
    except IndexError:
        fname, path_config = 'sweep0.cfg', default_config_path
        log.info('Using default parameters in %s',
                 join(path_config, fname))
    df = run_sweep(join(path_config, fname))
    print(df.to_string(index=False))
    sys.exit(0 if df['passed'].all() else 3)
