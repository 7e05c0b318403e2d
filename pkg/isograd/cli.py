"""Command line front end.

Usage:
    isograd dim problems/gap2.json
    isograd normalize problems/gap2_z3.json --output out.json
    isograd verify out.json
    isograd equiv a.json b.json
    isograd ext problems/gap2_z3.json
    isograd hom problems/gap2.json --window -3 3
    isograd act problems/gap2_gauge.json
    isograd sum a.json b.json
    isograd scale -1/2 a.json
    isograd basechange problems/gap2_z3.json --ring '{"kind": "quotient", "modulus": ["0", "0", "1"]}'

Results are canonical JSON on standard output (or ``--output``); diagnostics
go to standard error.  Exit codes: 0 ok, 1 usage, 2 parse, 3 mathematical
precondition.
"""

from __future__ import print_function, division, absolute_import

import argparse
import logging
import re
import sys

from isograd import __version__
from isograd import basechange
from isograd import ext
from isograd import moduli
from isograd.diffmod import default_hom_window, hom_space, is_morphism
from isograd.exceptions import (IsogradError, ProblemError, ShapeError,
                                UsageError, VerificationError)
from isograd.fileio import cfg_io
from isograd.fileio import json_io

log = logging.getLogger(__name__)

_NEGATIVE_SCALAR = re.compile(r'^-\d+(/\d+)?$|^-\d*\.\d+$')


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _add_common_options(parser, suppress=False):
    """``--config``, ``--output`` and ``-v`` for the top level or a command.

    Args:
        parser (argparse.ArgumentParser): parser to extend.
        suppress (bool): leave unset options out of the namespace so a
            command-level parser keeps values given before the command.
    """
    unset = argparse.SUPPRESS if suppress else None
    parser.add_argument('--config', default=unset, help='config file '
                        'overlaying the package defaults')
    parser.add_argument('--output', default=unset,
                        help='write the result to this file')
    parser.add_argument('-v', '--verbose', action='count',
                        default=argparse.SUPPRESS if suppress else 0,
                        help='-v for INFO, -vv for DEBUG')


def build_parser():
    parser = _ArgumentParser(prog='isograd', description='Classify filtered '
                             'q-difference modules with fixed graded part.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    _add_common_options(parser)
    common = _ArgumentParser(add_help=False)
    _add_common_options(common, suppress=True)
    sub = parser.add_subparsers(dest='command', parser_class=_ArgumentParser)

    def command(name, summary):
        return sub.add_parser(name, help=summary, parents=[common])

    p = command('dim', 'moduli dimension and Ext ranks')
    p.add_argument('file')

    p = command('normalize', 'window normal form with gauge')
    p.add_argument('file')
    p.add_argument('--verify-only', action='store_true',
                   help='only re-check the certificate recorded in the file')

    p = command('verify', 're-check a recorded gauge certificate')
    p.add_argument('file')

    p = command('equiv', 'gauge equivalence of two presentations')
    p.add_argument('file_a')
    p.add_argument('file_b')

    p = command('ext', 'Ext basis and reduction (two blocks)')
    p.add_argument('file')

    p = command('hom', 'Hom between graded blocks')
    p.add_argument('file')
    p.add_argument('--window', nargs=2, type=int, metavar=('D_LO', 'D_HI'))

    p = command('act', 'apply the gauge recorded in a file')
    p.add_argument('file')

    p = command('sum', 'Baer sum of two extension classes')
    p.add_argument('file_a')
    p.add_argument('file_b')

    p = command('scale', 'scalar multiple of an extension class')
    # -1/2 is a scalar, not an option
    p._negative_number_matcher = _NEGATIVE_SCALAR
    p.add_argument('scalar', help='rational string or JSON scalar')
    p.add_argument('file')

    p = command('basechange', 'verify extension of scalars')
    p.add_argument('file')
    p.add_argument('--ring', required=True,
                   help='JSON coefficient ring object, optionally with '
                   '"image_of_t"')
    return parser


def _configure_logging(verbose, settings):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(settings['General']['log_level']).upper(),
                        logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)


def _presentation(problem):
    if problem.presentation is None:
        return moduli.FilteredPresentation(problem.spec)
    return problem.presentation


def _two_blocks(problem, what):
    if problem.spec.k != 2:
        raise ShapeError('{} needs exactly two graded blocks, got {}'.format(
            what, problem.spec.k))


def class_to_json(cls):
    ring = cls.pair.ring
    return {'delta': ext.delta(cls.pair),
            'window': list(cls.pair.window()),
            'rep': json_io.matrix_to_json(cls.rep),
            'reduced': json_io.matrix_to_json(cls.reduced),
            'certificate': json_io.matrix_to_json(cls.certificate),
            'coordinates': [json_io.scalar_to_json(ring, c)
                            for c in ext.coordinates(cls)],
            'split': ext.is_split(cls)}


def cmd_dim(args, settings):
    spec = json_io.read_problem(args.file).spec
    table = moduli.delta_table(spec)
    log.info('Ext ranks:\n%s', table.to_string(index=False))
    return {'dimension': moduli.moduli_dimension(spec),
            'pairs': [{'i': int(row.i), 'j': int(row.j),
                       'delta': int(row.delta)} for row in table.itertuples()]}


def _verify_document(problem):
    if problem.presentation is None or problem.source is None or \
            problem.gauge is None:
        raise ProblemError('verification needs "blocks", "source_blocks" and '
                           '"gauge"', code='validation')
    return moduli.act(problem.gauge, problem.source) == problem.presentation


def cmd_verify(args, settings):
    problem = json_io.read_problem(args.file)
    if not _verify_document(problem):
        raise VerificationError('gauge does not map source_blocks to blocks')
    return {'verified': True}


def cmd_normalize(args, settings):
    if args.verify_only:
        return cmd_verify(args, settings)
    problem = json_io.read_problem(args.file)
    p = _presentation(problem)
    nf = moduli.normal_form(p)
    # re-check on the assembled matrices
    if not is_morphism(nf.gauge.matrix(), moduli.assemble(p),
                       moduli.assemble(nf.presentation)):
        raise VerificationError('normal form certificate failed verification')
    log.info('normal form coordinates: %s', moduli.coordinates(nf))
    return json_io.problem_to_json(problem.spec, nf.presentation, source=p,
                                   gauge=nf.gauge, verified=True)


def cmd_equiv(args, settings):
    a = json_io.read_problem(args.file_a)
    b = json_io.read_problem(args.file_b)
    same, witness = moduli.equivalent(_presentation(a), _presentation(b))
    out = {'equivalent': same}
    if same:
        out['witness'] = json_io.block_map_to_json(witness)
    return out


def cmd_ext(args, settings):
    problem = json_io.read_problem(args.file)
    _two_blocks(problem, 'ext')
    pair = problem.spec.pair(0, 1)
    out = {'delta': ext.delta(pair),
           'window': list(pair.window()),
           'basis': [json_io.matrix_to_json(E) for E in ext.ext_basis(pair)]}
    if problem.presentation is not None:
        out['class'] = class_to_json(moduli.k2_bridge(problem.presentation))
    return out


def _window(args, M, N):
    if args.window is not None:
        return tuple(args.window)
    return default_hom_window(M, N)


def _hom_to_json(hs):
    return {'window': list(hs.window), 'rank': len(hs.basis),
            'qdim': hs.qdim, 'free': hs.free,
            'basis': [json_io.matrix_to_json(F) for F in hs.basis]}


def cmd_hom(args, settings):
    problem = json_io.read_problem(args.file)
    spec = problem.spec
    out = {'pairs': []}
    for a, M in enumerate(spec.blocks):
        for b, N in enumerate(spec.blocks):
            entry = {'source': a + 1, 'target': b + 1}
            entry.update(_hom_to_json(hom_space(M, N,
                                                _window(args, M, N))))
            out['pairs'].append(entry)
    if problem.presentation is not None:
        if args.window is not None:
            window = tuple(args.window)
        else:
            window = tuple(int(w) for w in settings['Hom']['default_window'])
        M = moduli.assemble(problem.presentation)
        out['endomorphisms'] = _hom_to_json(hom_space(M, M, window))
    return out


def cmd_act(args, settings):
    problem = json_io.read_problem(args.file)
    if problem.gauge is None:
        raise ProblemError('act needs a "gauge"', code='validation')
    p = _presentation(problem)
    v = moduli.act(problem.gauge, p)
    if not is_morphism(problem.gauge.matrix(), moduli.assemble(p),
                       moduli.assemble(v)):
        raise VerificationError('gauge action failed verification')
    return json_io.problem_to_json(problem.spec, v, source=p,
                                   gauge=problem.gauge, verified=True)


def _bridge(path):
    problem = json_io.read_problem(path)
    _two_blocks(problem, 'extension class arithmetic')
    return moduli.k2_bridge(_presentation(problem))


def cmd_sum(args, settings):
    return class_to_json(ext.ext_add(_bridge(args.file_a),
                                     _bridge(args.file_b)))


def cmd_scale(args, settings):
    cls = _bridge(args.file)
    raw = args.scalar
    if raw.startswith('['):
        raw = json_io.parse_json(raw)
    scalar = json_io.parse_scalar(cls.pair.ring, raw)
    return class_to_json(ext.ext_scale(scalar, cls))


def cmd_basechange(args, settings):
    problem = json_io.read_problem(args.file)
    ring_obj = json_io.parse_json(args.ring)
    json_io.validate_ring(ring_obj)
    target = json_io.parse_ring(ring_obj)
    image = None
    if 'image_of_t' in ring_obj:
        image = json_io.parse_scalar(target, ring_obj['image_of_t'])
    elif problem.spec.ring.kind != 'Q' and problem.spec.ring == target:
        image = target.generator()
    phi = basechange.RingMorphism(problem.spec.ring, target, image)
    opts = settings['Basechange']
    reports = []
    for i, j in problem.spec.pairs():
        report = basechange.check_ext_basechange(
            phi, problem.spec.pair(i, j), samples=int(opts['samples']),
            degrees=(int(opts['low_degree']), int(opts['high_degree'])),
            seed=int(opts['seed']))
        report.subject = 'ext({},{})'.format(i + 1, j + 1)
        reports.append(report)
    if problem.presentation is not None:
        reports.append(basechange.check_normal_form_basechange(
            phi, problem.presentation))
    for report in reports:
        log.info('%s:\n%s', report.subject,
                 report.to_frame().to_string(index=False))
    return {'passed': all(r.passed for r in reports),
            'reports': [r.to_dict() for r in reports]}


COMMANDS = {'dim': cmd_dim, 'normalize': cmd_normalize, 'verify': cmd_verify,
            'equiv': cmd_equiv, 'ext': cmd_ext, 'hom': cmd_hom,
            'act': cmd_act, 'sum': cmd_sum, 'scale': cmd_scale,
            'basechange': cmd_basechange}


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w') as f:
            f.write(text)


def main(argv=None):
    """Run the command line.

    Args:
        argv (list): arguments without the program name. Defaults to
            ``sys.argv[1:]``.

    Returns:
        int: process exit code.
    """
    argv = sys.argv[1:] if argv is None else argv
    indent = 2
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError('missing command')
        settings = cfg_io.read_config(args.config)
        indent = int(settings['Output']['indent'])
        _configure_logging(args.verbose, settings)
        result = COMMANDS[args.command](args, settings)
    except IsogradError as e:
        log.error('%s: %s', e.code, e.detail)
        sys.stdout.write(json_io.dumps(e.to_dict(), indent))
        return e.exit_code
    _emit(json_io.dumps(result, indent), args.output)
    return 0


if __name__ == '__main__':
    sys.exit(main())
