from __future__ import print_function, division, absolute_import

import os
from os.path import join

try:
    import ConfigParser as configparser
except ImportError as e:
    import configparser

from isograd.exceptions import UsageError


PATH_DEFAULT_CONFIG = join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), 'data', 'isograd.cfg')


def _get_section(config, section):
    """Get all options from a section in a config file.

    Args:
        config: configparser instance.
        section (str): Section name.

    Returns:
        dict: Contents of a section from config file.
    """
    dict1 = {}
    options = config.options(section)
    for option in options:
        val = config.get(section, option)
        if ',' in val:
            val = [item.strip() for item in val.split(',')]
        dict1[option] = val
    return dict1


def read_config(filename=None):
    """Read the package settings, overlaid section-wise by a user file.

    Args:
        filename (str): path of a user config file. Defaults to None (package
            defaults only).

    Returns:
        dict: section -> {option: value}; comma separated values become
        lists of strings.

    Raises:
        UsageError: ``filename`` does not exist.
    """
    config = configparser.ConfigParser()
    config.read(PATH_DEFAULT_CONFIG)
    if filename is not None:
        if not os.path.isfile(filename):
            raise UsageError('config file not found: {}'.format(filename))
        config.read(filename)
    out = {}
    for section in config.sections():
        out[section] = _get_section(config, section)
    return out


def _coerce(v):
    """Numbers, [a, b] lists and True/False from a config value string."""
    for kind in (int, float):
        try:
            return kind(v)
        except ValueError:
            pass
    if v.startswith('['):
        items = [it.strip() for it in v.strip('[').strip(']').split(',')]
        if items == ['']:
            return []
        return [_coerce(it) for it in items]
    if v == 'True':
        return True
    if v == 'False':
        return False
    return v


def read_sweep_cfg(file_in):
    r"""Read a sweep config file.

    Lines are ``key = value``; the key prefix routes the option.

    Args:
        file_in (str): name of config file (can include path) with format
            'sweep<sweep_id>.cfg'.

    Returns:
        str, dict, dict, dict, dict: sweep_id\: sweep ID, spec_args\: graded
        spec sampling (q, ring modulus, k, ranks, slopes), sample_args\:
        number of trials, seed and degree ranges, checks_args\: which checks
        to run, basechange_args\: target ring of the base change check.
    """
    sweep_id = os.path.basename(file_in)[len('sweep'):-len('.cfg')]
    spec_args = {}
    sample_args = {}
    checks_args = {}
    basechange_args = {}
    routes = [('spec_', spec_args), ('sample_', sample_args),
              ('checks_', checks_args), ('basechange_', basechange_args)]
    with open(file_in, 'r') as f:
        for line in f:
            line = line.strip()
            if not line or line[0] == '#' or ' = ' not in line:
                continue
            k, v = [it.strip() for it in line.split(' = ', 1)]
            for prefix, args in routes:
                if k.startswith(prefix):
                    args[k[len(prefix):]] = _coerce(v)
                    break
    return sweep_id, spec_args, sample_args, checks_args, basechange_args
