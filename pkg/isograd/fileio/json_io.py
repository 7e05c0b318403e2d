"""Problem documents: JSON parsing, schema validation and canonical output.

Rationals are strings ("3", "-1/2"); quotient-ring scalars may also be
arrays of rational strings, the coefficients of a polynomial in t, constant
term first.  Laurent polynomials are objects mapping degree strings to
scalars.  Block maps are keyed "i,j" with 1-based block indices.

Canonical output never sorts keys lexicographically: every object is built
in numeric order (degrees, then block indices) and dumped as is.
"""

from __future__ import print_function, division, absolute_import

from collections import namedtuple
from fractions import Fraction
import json
import logging
import os
from os.path import join

from jsonschema import Draft202012Validator

from isograd.algebra import CoeffRing, DilationQ, LaurentPoly, MatrixK
from isograd.diffmod import PureModule
from isograd.exceptions import IsogradError, ProblemError
from isograd.moduli import FilteredPresentation, GradedSpec, UnipotentGauge

log = logging.getLogger(__name__)

PATH_SCHEMA = join(os.path.dirname(os.path.dirname(os.path.abspath(
    __file__))), 'data', 'problem.schema.json')

Problem = namedtuple('Problem', ['spec', 'presentation', 'gauge', 'source',
                                 'verified'])

_schema = None


def load_schema():
    global _schema
    if _schema is None:
        with open(PATH_SCHEMA, 'r') as f:
            _schema = json.load(f)
    return _schema


def _validate(doc, schema, what):
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc),
                    key=lambda e: [str(p) for p in e.path])
    if errors:
        detail = '; '.join('{}: {}'.format(
            '.'.join(str(p) for p in e.path) or '<root>', e.message)
            for e in errors[:10])
        raise ProblemError('invalid {}: {}'.format(what, detail),
                           code='schema')


def validate_problem(doc):
    """Validate a problem document against the package schema.

    Raises:
        ProblemError: code "schema" on the first violations.
    """
    _validate(doc, load_schema(), 'problem document')


def validate_ring(obj):
    """Validate a coefficient ring object (the ``--ring`` argument)."""
    schema = load_schema()
    _validate(obj, {'$defs': schema['$defs'], '$ref': '#/$defs/coeff_ring'},
              'coefficient ring')


def read_json(path):
    """Load a JSON file.

    Raises:
        ProblemError: code "parse" when the file is missing or malformed.
    """
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except (IOError, OSError) as e:
        raise ProblemError('cannot read {}: {}'.format(path, e))
    except ValueError as e:
        raise ProblemError('malformed JSON in {}: {}'.format(path, e))


def parse_json(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ProblemError('malformed JSON: {}'.format(e))


# ----- parsing -----

def parse_rational(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ProblemError('bad rational {!r}: {}'.format(s, e),
                           code='validation')


def parse_ring(obj):
    if obj['kind'] == 'Q':
        return CoeffRing.rationals()
    try:
        return CoeffRing.quotient([parse_rational(c)
                                   for c in obj['modulus']])
    except ValueError as e:
        if isinstance(e, IsogradError):
            raise
        raise ProblemError(str(e), code='validation')


def parse_scalar(ring, x):
    try:
        if isinstance(x, list):
            return ring([parse_rational(c) for c in x])
        return ring(parse_rational(x))
    except ProblemError:
        raise
    except IsogradError as e:
        raise ProblemError(str(e), code='validation')


def parse_laurent(ring, obj):
    return LaurentPoly(ring, {int(d): parse_scalar(ring, c)
                              for d, c in obj.items()})


def _matrix(ring, rows, entry):
    if any(len(row) != len(rows[0]) for row in rows):
        raise ProblemError('ragged matrix rows', code='validation')
    return MatrixK(ring, [[entry(ring, e) for e in row] for row in rows])


def parse_block_map(spec, obj, cls):
    """Block family from an "i,j" keyed map (1-based indices)."""
    blocks = {}
    for key, rows in obj.items():
        i, j = [int(it) - 1 for it in key.split(',')]
        if not 0 <= i < j < spec.k:
            raise ProblemError('block {} outside the strict upper triangle '
                               'of {} graded blocks'.format(key, spec.k),
                               code='validation')
        blocks[(i, j)] = _matrix(spec.ring, rows, parse_laurent)
    try:
        return cls(spec, blocks)
    except IsogradError as e:
        raise ProblemError(str(e), code='validation')


def parse_spec(doc):
    """GradedSpec of a validated document."""
    q = parse_rational(doc['q'])
    try:
        q = DilationQ(q)
    except ValueError as e:
        raise ProblemError(str(e), code='validation')
    ring = parse_ring(doc['coeff_ring'])
    blocks = []
    for m, entry in enumerate(doc['graded']):
        A0 = _matrix(ring, entry['A0'], parse_scalar)
        if A0.shape != (entry['rank'], entry['rank']):
            raise ProblemError('graded block {} has rank {} but A0 of shape '
                               '{}'.format(m + 1, entry['rank'], A0.shape),
                               code='validation')
        try:
            blocks.append(PureModule(q, entry['slope'], A0))
        except ValueError as e:
            raise ProblemError('graded block {}: {}'.format(m + 1, e),
                               code='validation')
    try:
        return GradedSpec(q, blocks)
    except ValueError as e:
        raise ProblemError(str(e), code='validation')


def parse_problem(doc):
    """Validate and parse a problem document.

    Returns:
        Problem: spec, presentation (None without "blocks"), gauge and
        source presentation (None when absent) and the recorded
        "verified" flag.
    """
    validate_problem(doc)
    spec = parse_spec(doc)
    presentation = gauge = source = None
    if 'blocks' in doc:
        presentation = parse_block_map(spec, doc['blocks'],
                                       FilteredPresentation)
    if 'gauge' in doc:
        gauge = parse_block_map(spec, doc['gauge'], UnipotentGauge)
    if 'source_blocks' in doc:
        source = parse_block_map(spec, doc['source_blocks'],
                                 FilteredPresentation)
    return Problem(spec, presentation, gauge, source, doc.get('verified'))


def read_problem(path):
    problem = parse_problem(read_json(path))
    log.info('read %s: %d graded blocks over %s', path, problem.spec.k,
             problem.spec.ring)
    return problem


# ----- serialization -----

def rational_to_json(x):
    return str(Fraction(x))


def scalar_to_json(ring, c):
    coords = list(ring.coordinates(c))
    if not any(coords[1:]):
        return rational_to_json(coords[0])
    while not coords[-1]:
        coords.pop()
    return [rational_to_json(x) for x in coords]


def laurent_to_json(f):
    return {str(d): scalar_to_json(f.ring, c) for d, c in f.terms()}


def matrix_to_json(M):
    return [[laurent_to_json(e) for e in row] for row in M.tolist()]


def constant_matrix_to_json(M):
    return [[scalar_to_json(M.ring, e.coeff(0)) for e in row]
            for row in M.tolist()]


def ring_to_json(ring):
    if ring.kind == 'Q':
        return {'kind': 'Q'}
    return {'kind': 'quotient',
            'modulus': [rational_to_json(c) for c in ring.modulus]}


def spec_to_json(spec):
    return [{'rank': P.r, 'slope': P.slope,
             'A0': constant_matrix_to_json(P.A0)} for P in spec.blocks]


def block_map_to_json(family):
    """"i,j" keyed map of every strict upper block, zeros included."""
    return {'{},{}'.format(i + 1, j + 1): matrix_to_json(X)
            for (i, j), X in family.items()}


def problem_to_json(spec, presentation=None, source=None, gauge=None,
                    verified=None):
    doc = {'q': rational_to_json(spec.q.q),
           'coeff_ring': ring_to_json(spec.ring),
           'graded': spec_to_json(spec)}
    if presentation is not None:
        doc['blocks'] = block_map_to_json(presentation)
    if source is not None:
        doc['source_blocks'] = block_map_to_json(source)
    if gauge is not None:
        doc['gauge'] = block_map_to_json(gauge)
    if verified is not None:
        doc['verified'] = bool(verified)
    return doc


def dumps(doc, indent=2):
    """Canonical text of a JSON value, newline terminated."""
    return json.dumps(doc, indent=indent, separators=(',', ': ')) + '\n'
