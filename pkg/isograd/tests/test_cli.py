from __future__ import print_function, division, absolute_import

from contextlib import redirect_stdout
import io
import json
import os
from os.path import join
import shutil
import tempfile
import unittest

from isograd import cli

PATH_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))))
PATH_PROBLEMS = join(PATH_ROOT, 'problems')

DUAL_RING = '{"kind": "quotient", "modulus": ["0", "0", "1"]}'


def problem(name):
    return join(PATH_PROBLEMS, name)


def run(*argv):
    """Exit code, stdout text and parsed JSON of one command line run."""
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    text = buf.getvalue()
    return code, text, (json.loads(text) if text else None)


class CliTestCase(unittest.TestCase):
    """Tests from 'cli.py'."""

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_dim(self):
        code, _, out = run('dim', problem('three.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['dimension'], 6)
        self.assertEqual(out['pairs'], [{'i': 1, 'j': 2, 'delta': 1},
                                        {'i': 1, 'j': 3, 'delta': 3},
                                        {'i': 2, 'j': 3, 'delta': 2}])

    def test_dim_single_block(self):
        code, _, out = run('dim', problem('single.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out, {'dimension': 0, 'pairs': []})

    def test_normalize(self):
        code, _, out = run('normalize', problem('gap2_z3.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['blocks'], {'1,2': [[{'1': '1/2'}]]})
        self.assertEqual(out['source_blocks'], {'1,2': [[{'3': '1'}]]})
        self.assertEqual(out['gauge'], {'1,2': [[{'1': '-1/2'}]]})
        self.assertTrue(out['verified'])

    def test_normalize_deterministic(self):
        first = run('normalize', problem('three.json'))[1]
        second = run('normalize', problem('three.json'))[1]
        self.assertEqual(first, second)

    def test_normalize_without_blocks(self):
        code, _, out = run('normalize', problem('gap2.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['blocks'], {'1,2': [[{}]]})
        self.assertEqual(out['gauge'], {'1,2': [[{}]]})

    def test_verify_round_trip(self):
        fname = join(self.tmpdir, 'nf.json')
        code, text, _ = run('--output', fname, 'normalize',
                            problem('ranks21.json'))
        self.assertEqual((code, text), (0, ''))
        self.assertEqual(run('verify', fname)[2], {'verified': True})
        self.assertEqual(run('normalize', '--verify-only', fname)[0], 0)

    def test_options_after_command(self):
        fname = join(self.tmpdir, 'nf.json')
        code, text, _ = run('normalize', problem('gap2_z3.json'),
                            '--output', fname)
        self.assertEqual((code, text), (0, ''))
        self.assertEqual(run('verify', fname)[2], {'verified': True})
        cfg = join(self.tmpdir, 'user.cfg')
        with open(cfg, 'w') as f:
            f.write('[Output]\nindent = 4\n')
        code, text, out = run('dim', problem('gap2.json'), '--config', cfg,
                              '-v')
        self.assertEqual(code, 0)
        self.assertTrue(text.startswith('{\n    "dimension"'))
        self.assertEqual(out['dimension'], 2)
        self.assertEqual(run('dim', problem('gap2.json'), '--config',
                             join(self.tmpdir, 'none.cfg'))[0], 1)

    def test_options_before_command_survive(self):
        fname = join(self.tmpdir, 'dim.json')
        code, text, _ = run('--output', fname, 'dim', problem('gap2.json'))
        self.assertEqual((code, text), (0, ''))
        with open(fname) as f:
            self.assertEqual(json.load(f)['dimension'], 2)

    def test_verify_tampered(self):
        fname = join(self.tmpdir, 'nf.json')
        run('--output', fname, 'normalize', problem('gap2_z3.json'))
        with open(fname) as f:
            doc = json.load(f)
        doc['gauge'] = {'1,2': [[{'1': '1/2'}]]}
        with open(fname, 'w') as f:
            json.dump(doc, f)
        code, _, out = run('verify', fname)
        self.assertEqual(code, 3)
        self.assertEqual(out['error'], 'verify')

    def test_verify_needs_certificate(self):
        code, _, out = run('verify', problem('gap2_z3.json'))
        self.assertEqual(code, 2)
        self.assertEqual(out['error'], 'validation')

    def test_equiv(self):
        fname = join(self.tmpdir, 'nf.json')
        run('--output', fname, 'normalize', problem('gap2_z3.json'))
        code, _, out = run('equiv', problem('gap2_z3.json'), fname)
        self.assertEqual(code, 0)
        self.assertTrue(out['equivalent'])
        self.assertEqual(out['witness'], {'1,2': [[{'1': '-1/2'}]]})
        _, _, out = run('equiv', problem('gap2_z3.json'), problem('gap2_z.json'))
        self.assertEqual(out, {'equivalent': False})

    def test_equiv_spec_mismatch(self):
        code, _, out = run('equiv', problem('gap2.json'), problem('three.json'))
        self.assertEqual(code, 3)
        self.assertEqual(out['error'], 'spec')

    def test_act(self):
        code, _, out = run('act', problem('gap2_gauge.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['blocks'], {'1,2': [[{'0': '-1', '2': '1'}]]})
        self.assertTrue(out['verified'])

    def test_act_result_equivalent_to_source(self):
        fname = join(self.tmpdir, 'acted.json')
        run('--output', fname, 'act', problem('gap2_gauge.json'))
        out = run('equiv', fname, problem('gap2.json'))[2]
        self.assertTrue(out['equivalent'])

    def test_ext(self):
        code, _, out = run('ext', problem('gap2_z3.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['delta'], 2)
        self.assertEqual(out['window'], [0, 1])
        self.assertEqual(out['basis'], [[[{'0': '1'}]], [[{'1': '1'}]]])
        self.assertEqual(out['class']['reduced'], [[{'1': '1/2'}]])
        self.assertEqual(out['class']['certificate'], [[{'1': '1/2'}]])
        self.assertEqual(out['class']['coordinates'], ['0', '1/2'])
        self.assertFalse(out['class']['split'])

    def test_ext_needs_two_blocks(self):
        code, _, out = run('ext', problem('three.json'))
        self.assertEqual(code, 3)
        self.assertEqual(out['error'], 'shape')

    def test_hom(self):
        code, _, out = run('hom', problem('gap2.json'))
        self.assertEqual(code, 0)
        ranks = {(e['source'], e['target']): e['rank'] for e in out['pairs']}
        self.assertEqual(ranks, {(1, 1): 1, (1, 2): 0, (2, 1): 0, (2, 2): 1})
        self.assertNotIn('endomorphisms', out)

    def test_hom_endomorphisms(self):
        code, _, out = run('hom', problem('gap2_one.json'), '--window',
                           '-2', '2')
        self.assertEqual(code, 0)
        self.assertEqual(out['endomorphisms']['window'], [-2, 2])
        self.assertTrue(out['endomorphisms']['rank'] >= 1)

    def test_scale_by_zero(self):
        code, _, out = run('scale', '0', problem('gap2_z3.json'))
        self.assertEqual(code, 0)
        self.assertTrue(out['split'])
        self.assertEqual(out['coordinates'], ['0', '0'])

    def test_scale_negative_rational(self):
        code, _, out = run('scale', '-1/2', problem('gap2_z3.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['reduced'], [[{'1': '-1/4'}]])
        self.assertEqual(out['coordinates'], ['0', '-1/4'])
        code, _, out = run('scale', '-1', problem('gap2_z3.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['reduced'], [[{'1': '-1/2'}]])

    def test_sum(self):
        code, _, out = run('sum', problem('gap2_one.json'),
                           problem('gap2_z.json'))
        self.assertEqual(code, 0)
        self.assertEqual(out['reduced'], [[{'0': '1', '1': '1'}]])

    def test_basechange(self):
        code, _, out = run('basechange', problem('gap2_z3.json'), '--ring',
                           DUAL_RING)
        self.assertEqual(code, 0)
        self.assertTrue(out['passed'])
        self.assertEqual([r['subject'] for r in out['reports']],
                         ['ext(1,2)', 'normal-form'])

    def test_basechange_retraction(self):
        ring = '{"kind": "Q", "image_of_t": "0"}'
        code, _, out = run('basechange', problem('dual.json'), '--ring', ring)
        self.assertEqual(code, 0)
        self.assertTrue(out['passed'])

    def test_basechange_bad_image(self):
        ring = '{"kind": "Q", "image_of_t": "1"}'
        code, _, out = run('basechange', problem('dual.json'), '--ring', ring)
        self.assertEqual(code, 3)
        self.assertEqual(out['error'], 'ring')

    def test_schema_error(self):
        code, _, out = run('dim', problem('bad_schema.json'))
        self.assertEqual(code, 2)
        self.assertEqual(out['error'], 'schema')

    def test_usage(self):
        self.assertEqual(run()[0], 1)
        code, _, out = run('dim')
        self.assertEqual(code, 1)
        self.assertEqual(out['error'], 'usage')
        self.assertEqual(run('--config', join(self.tmpdir, 'none.cfg'),
                             'dim', problem('gap2.json'))[0], 1)


if __name__ == '__main__':
    unittest.main()
