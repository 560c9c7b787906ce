#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Suite of unit-tests for testing anseroid
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import codecs
import contextlib
import io
import json
import os
import tempfile
import unittest

import anseroid as a
from tests import scenarioDocument, writeScenario

class RunCommandTests(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmp.name, 'out')
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()

    def tearDown(self):
        self.tmp.cleanup()

    def run_command(self, doc, *args, **kwargs):
        path = writeScenario(self.tmp.name, doc)
        with contextlib.redirect_stdout(self.stdout), contextlib.redirect_stderr(self.stderr):
            return a.cmd_run(path, *args, output=self.output, **kwargs)

    def test_outputs(self):
        doc = scenarioDocument(simulation={'dt': 0.02, 'duration': 0.2})
        self.assertEqual(self.run_command(doc), a.EXIT_OK)

        for name in ('trajectory.csv', 'summary.json', 'manifest.json'):
            self.assertTrue(os.path.isfile(os.path.join(self.output, name)), name)
        for name in ('cost_vs_time.csv', 'flock_shape.csv', 'spanwise_profile.csv', 'wake_field.csv'):
            self.assertTrue(os.path.isfile(os.path.join(self.output, 'plots', name)), name)

        record = a.TrajectoryRecord.parse_file(os.path.join(self.output, 'trajectory.csv'))
        self.assertEqual(len(record), 11)
        self.assertEqual(record.agent_ids, [0, 1])

        with codecs.open(os.path.join(self.output, 'summary.json'), 'r', 'utf-8') as f:
            summary = json.load(f)
        self.assertEqual(summary['ticks'], 11)
        self.assertEqual(sorted(summary['ledger']), ['0', '1'])

        with codecs.open(os.path.join(self.output, 'manifest.json'), 'r', 'utf-8') as f:
            manifest = json.load(f)
        self.assertEqual(sorted(manifest['phases']), ['analyze', 'load', 'simulate'])
        self.assertEqual(manifest['parameters']['controller']['kappa'], 0.25)
        self.assertEqual(len(manifest['content_hash']), 40)
        self.assertLessEqual(manifest['controller_tick']['mean'], manifest['controller_tick']['max'])
        self.assertIn('outputs in', self.stdout.getvalue())

    def test_without_plots(self):
        doc = scenarioDocument(simulation={'dt': 0.02, 'duration': 0.1}, outputs={'plots': False})
        self.assertEqual(self.run_command(doc, seed=3), a.EXIT_OK)
        self.assertFalse(os.path.exists(os.path.join(self.output, 'plots')))

        with codecs.open(os.path.join(self.output, 'manifest.json'), 'r', 'utf-8') as f:
            self.assertEqual(json.load(f)['parameters']['simulation']['seed'], 3)

    def test_config_errors(self):
        self.assertEqual(self.run_command(scenarioDocument(controller={'kapa': 1.0})), a.EXIT_CONFIG)
        self.assertIn('controller.kapa', self.stderr.getvalue())

        self.assertEqual(self.run_command(scenarioDocument(), ['agents.1.v_min=20']), a.EXIT_CONFIG)
        self.assertIn('agents[1].v_min', self.stderr.getvalue())

        with contextlib.redirect_stderr(self.stderr):
            self.assertEqual(a.cmd_run(os.path.join(self.tmp.name, 'missing.json')), a.EXIT_CONFIG)
        self.assertFalse(os.path.exists(self.output))


class DeriveCommandTests(unittest.TestCase):

    def test_raven(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            self.assertEqual(a.cmd_derive(18.7, 1.4, 12.0, 9.0, 1.2, 0.054 / 0.7), a.EXIT_OK)

        text = out.getvalue()
        vehicle = json.loads(text[:text.rindex('}') + 1])['vehicle']
        self.assertAlmostEqual(vehicle['gamma'], 1.2368, places=4)
        self.assertAlmostEqual(vehicle['r_star'], 0.054, places=12)
        self.assertAlmostEqual(vehicle['half_span'], 0.7)
        self.assertIn('profile drag at cruise', text)

    def test_invalid(self):
        err = io.StringIO()
        with contextlib.redirect_stderr(err):
            self.assertEqual(a.cmd_derive(18.7, 1.4, 12.0, 9.0, 1.2, 0.5), a.EXIT_CONFIG)
            self.assertEqual(a.cmd_derive(-1.0, 1.4, 12.0, 9.0, 1.2, 0.05), a.EXIT_CONFIG)
        self.assertIn('core_fraction', err.getvalue())


class VerifyCommandTests(unittest.TestCase):

    def test_module_selection(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            self.assertEqual(a.cmd_verify('wake'), 0)
        self.assertIn('3 of 3 checks passed', out.getvalue())
        self.assertNotIn('aeroforces', out.getvalue())

    def test_failure(self):
        checks = [
            ('fake', 'passes', lambda rng: (True, 'ok')),
            ('fake', 'fails', lambda rng: (False, 'off by one')),
            ('fake', 'raises', lambda rng: 1 / 0),
        ]
        out = io.StringIO()
        with contextlib.redirect_stdout(out), self.assertLogs('anseroid.verify', 'ERROR'):
            self.assertEqual(a.run_checks(checks=checks), 1)
        self.assertIn('1 of 3 checks passed', out.getvalue())
        self.assertIn('ZeroDivisionError', out.getvalue())

    def test_corrupted_drag_fixture(self):
        fixture = dict(a.verify.DRAG_FIXTURE, draws=5, c1=(-1.0, -1e-4))
        checks = [('drag', 'quartic root against grid minimum',
                   lambda rng: a.verify.check_quartic_oracle(rng, fixture))]
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            self.assertEqual(a.run_checks(checks=checks), 1)
        self.assertIn('FAIL', out.getvalue())
        self.assertIn('must be positive', out.getvalue())

    def test_modules(self):
        self.assertEqual(a.MODULES, ['aeroforces', 'analysis', 'controller', 'drag', 'sim', 'wake'])


class ProgressLineTests(unittest.TestCase):

    def test_disabled_off_terminal(self):
        out = io.StringIO()
        progress = a.ProgressLine('raven', out, every=2)
        for done in range(1, 6):
            progress(done, 5)
        self.assertEqual(out.getvalue(), '')

    def test_rewrites_row(self):
        out = io.StringIO()
        progress = a.ProgressLine('raven', out, every=2)
        progress.enabled = True
        for done in range(1, 6):
            progress(done, 5)
        self.assertEqual(out.getvalue().count('raven: tick'), 3)
        self.assertTrue(out.getvalue().endswith('raven: tick 5/5 (100%)\n'))

if __name__ == '__main__':
    unittest.main()
