from __future__ import print_function, division, absolute_import

import os
from pathlib import PurePath


def set_path(path_in, default_path):
    """Split a config argument into file name and directory.

    A bare file name that does not exist relative to the working directory
    is looked up in ``default_path``.
    """
    if os.path.isfile(path_in):
        path = os.path.dirname(os.path.abspath(path_in))
        filename = os.path.basename(path_in)
    else:
        path = default_path
        filename = path_in
    return filename, path


def substitute_dir_in_path(path, olddir, newdir):
    pp = PurePath(path)
    parts = [p if p != olddir else newdir for p in pp.parts]
    return os.path.join(*parts)


def none_to_empty_dict(x):
    """If a variable is None, return an empty dictionary."""
    if x is None:
        x = {}
    return x


def parse_ring_modulus(modulus):
    """Modulus list from a config value: [] or 'Q' mean the rationals."""
    if modulus in (None, 'Q', []):
        return None
    if not isinstance(modulus, list):
        modulus = [modulus]
    return [str(c) for c in modulus]
