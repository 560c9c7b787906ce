#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Suite of unit-tests for testing anseroid
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math
import unittest

import numpy as np
import numpy.testing as npt

import anseroid as a
from tests import scenarioDocument

class IntegrationTests(unittest.TestCase):

    def test_quarter_circle(self):
        end = a.integrate_step(a.VehicleState([0.0, 0.0], 0.0), a.ControlInput(1.0, math.pi / 2), 1.0)
        npt.assert_allclose(end.position, [2.0 / math.pi, 2.0 / math.pi], atol=1e-12)
        self.assertAlmostEqual(end.heading, math.pi / 2, places=12)

    def test_straight(self):
        end = a.integrate_step(a.VehicleState([1.0, 2.0], math.pi / 4), a.ControlInput(2.0, 0.0), 0.5)
        npt.assert_allclose(end.position, [1.0 + math.sqrt(0.5), 2.0 + math.sqrt(0.5)], atol=1e-12)
        self.assertEqual(end.heading, math.pi / 4)

    def test_split_step(self):
        u = a.ControlInput(3.0, 0.4)
        start = a.VehicleState([1.0, 2.0], 0.3)
        full = a.integrate_step(start, u, 1.0)
        half = a.integrate_step(a.integrate_step(start, u, 0.5), u, 0.5)
        npt.assert_allclose(half.position, full.position, atol=1e-12)
        self.assertAlmostEqual(half.heading, full.heading, places=12)

    def test_heading_wraps(self):
        end = a.integrate_step(a.VehicleState([0.0, 0.0], 3.1), a.ControlInput(1.0, 1.0), 0.1)
        self.assertGreater(end.heading, -math.pi)
        self.assertLess(end.heading, 0.0)

    def test_finite(self):
        self.assertTrue(a.VehicleState([0.0, 1.0], 0.0).is_finite())
        self.assertFalse(a.VehicleState([float('nan'), 1.0], 0.0).is_finite())


class ScenarioRunTests(unittest.TestCase):

    def setUp(self):
        self.cfg = a.ScenarioConfig.from_dict(scenarioDocument(simulation={'dt': 0.02, 'duration': 0.2}))

    def test_tick_count(self):
        record = a.run_scenario(self.cfg)
        self.assertEqual(self.cfg.tick_count, 11)
        self.assertEqual(len(record), 11)
        self.assertEqual(record.agent_ids, [0, 1])
        self.assertAlmostEqual(record.times[-1], 0.2)
        self.assertEqual(len(record.timings), 11)

    def test_deterministic(self):
        self.assertEqual(str(a.run_scenario(self.cfg)), str(a.run_scenario(self.cfg)))

    def test_threads(self):
        threaded = a.ScenarioConfig.from_dict(
            scenarioDocument(simulation={'dt': 0.02, 'duration': 0.2, 'threads': 2}))
        self.assertEqual(str(a.run_scenario(self.cfg)), str(a.run_scenario(threaded)))

    def test_isolated_agent(self):
        doc = scenarioDocument(simulation={'dt': 0.02, 'duration': 0.2}, agents=[{'id': 0}])
        record = a.run_scenario(a.ScenarioConfig.from_dict(doc))
        v_star = (95.0 / 5e-3) ** 0.25
        npt.assert_allclose(record.column('v')[:, 0], v_star, rtol=1e-12)
        self.assertAlmostEqual(record.positions()[-1, 0, 0], 0.2 * v_star, places=9)
        self.assertEqual(set(record.column('mode')[:, 0]), {'constrained'})

    def test_progress(self):
        calls = []
        a.run_scenario(self.cfg, lambda done, total: calls.append((done, total)))
        self.assertEqual(calls[0], (1, 11))
        self.assertEqual(calls[-1], (11, 11))

    def test_decisions_on_snapshot(self):
        # the first recorded row holds the initial states
        record = a.run_scenario(self.cfg)
        npt.assert_array_equal(record.positions()[0], [[0.0, 0.0], [-7.0, 1.0]])
        gates = [frame[1].gate_feasible for frame in record.frames]
        modes = record.column('mode')[:, 1]
        self.assertEqual([m == 'constrained' for m in modes], gates)

    def test_numerical_error(self):
        error = a.NumericalError(12, "non-finite state for agent 3")
        self.assertEqual(error.tick, 12)
        self.assertTrue(str(error).startswith("tick 12"))


class RunInvariantTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.cfg = a.ScenarioConfig.from_dict(scenarioDocument(
            simulation={'dt': 0.02, 'duration': 3.0},
            agents=[{'id': 0, 'x': 0.0, 'y': 0.0}, {'id': 1, 'x': -7.0, 'y': 0.3, 'heading': -0.09}]))
        cls.record = a.run_scenario(cls.cfg)

    def test_speed_bounds(self):
        v = self.record.column('v')
        self.assertGreaterEqual(np.min(v), 6.0)
        self.assertLessEqual(np.max(v), 15.0)

    def test_heading_corridor(self):
        limit = self.cfg.controller.epsilon + 1.0 * self.cfg.dt
        self.assertLessEqual(np.max(np.abs(self.record.column('theta'))), limit + 1e-12)

    def test_energy_descent(self):
        # rho = 0, so a constrained tick may raise E only at second order in dt
        E = self.record.column('cost_E')
        modes = self.record.column('mode')
        constrained = modes[:-1] == 'constrained'
        rise = (E[1:] - E[:-1])[constrained]
        self.assertGreater(len(rise), 0)
        self.assertLessEqual(np.max(rise), 100.0 * self.cfg.dt ** 2)

if __name__ == '__main__':
    unittest.main()
