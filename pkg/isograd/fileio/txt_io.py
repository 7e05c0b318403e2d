"""Read and write sweep result tables as whitespace-delimited .txt files."""

from __future__ import print_function, division, absolute_import

import os
from os.path import join

import pandas as pd


def _make_sweep_path(path_out, sweep_id):
    """Construct path to the sweep output table.

    Args:
        path_out (str): output path
        sweep_id (str): sweep id

    Returns:
        str: file path and name
    """
    sweep_id = str(sweep_id)
    path_sweep = join(path_out, ''.join(['sweep', sweep_id]))
    fname = 'sweep{}.txt'.format(sweep_id)
    return join(path_sweep, fname)


def txt_write(path_out, sweep_id, df):
    """Write a sweep table.

    Args:
        path_out (str): output path
        sweep_id (str): sweep id
        df (DataFrame): one row per trial.

    Returns:
        str: path of the written file.
    """
    fname = _make_sweep_path(path_out, sweep_id)
    path_sweep = os.path.dirname(fname)
    if not os.path.isdir(path_sweep):
        os.makedirs(path_sweep)
    with open(fname, 'w') as f:
        df.to_string(f, index=False)
        f.write('\n')
    return fname


def txt_read(path_out, sweep_id):
    """Read a sweep table written by ``txt_write``.

    Returns:
        DataFrame
    """
    fname = _make_sweep_path(path_out, sweep_id)
    return pd.read_csv(fname, sep=r"\s+")
