#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Suite of unit-tests for testing anseroid
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import os
import unittest

import numpy as np

import anseroid as a
from tests import createLeader, createRavenParams

class GateTests(unittest.TestCase):

    def setUp(self):
        self.bounds = a.ControlBounds(1.0, 15.0, 1.0)
        self.cfg = a.ControllerConfig(kappa=0.0)
        self.state = a.VehicleState([0.0, 0.0], 0.0)

    def gate(self, lie, dE_dt):
        return a.feasibility_gate(self.state, a.FlockCostSample(grad_E=[lie, 0.0], dE_dt=dE_dt), self.bounds, self.cfg)

    def test_descending(self):
        gate = self.gate(-0.1, 0.0)
        self.assertTrue(gate.feasible)
        self.assertEqual(gate.interval, (1.0, 15.0))

    def test_ascending(self):
        gate = self.gate(0.1, 0.0)
        self.assertFalse(gate)
        self.assertIsNone(gate.interval)

    def test_lower_edge(self):
        gate = self.gate(-0.2, 0.1)
        self.assertTrue(gate.feasible)
        self.assertEqual(gate.interval, (1.0, 15.0))

        gate = self.gate(-0.2, 2.0)
        self.assertEqual(gate.interval, (10.0, 15.0))

    def test_upper_edge(self):
        gate = self.gate(0.5, -2.0)
        self.assertEqual(gate.interval, (1.0, 4.0))

    def test_flat(self):
        self.assertTrue(self.gate(0.0, 0.0).feasible)
        self.assertFalse(self.gate(0.0, 0.5).feasible)

    def test_premise(self):
        state = a.VehicleState([0.0, 0.0], 0.5)
        gate = a.feasibility_gate(state, a.FlockCostSample(grad_E=[-1.0, 0.0]), self.bounds, self.cfg)
        self.assertFalse(gate.feasible)
        self.assertFalse(gate.premise_ok)


class SolverTests(unittest.TestCase):

    def setUp(self):
        self.bounds = a.ControlBounds(6.0, 15.0, 1.0)
        self.cfg = a.ControllerConfig()

    def test_infeasible(self):
        state = a.VehicleState([0.0, 0.0], 0.0)
        sample = a.FlockCostSample(grad_E=[1.0, 0.0], dE_dt=1.0)
        with self.assertRaises(a.Infeasible):
            a.solve_constrained(state, sample, self.bounds, self.cfg, 11.0, 0.02)

    def test_unconstrained_optimum(self):
        state = a.VehicleState([0.0, 0.0], 0.05)
        u = a.solve_constrained(state, a.FlockCostSample(), self.bounds, self.cfg, 11.0, 0.02)
        self.assertEqual(u, a.ControlInput(11.0, 0.0))

    def test_speed_capped(self):
        state = a.VehicleState([0.0, 0.0], 0.0)
        sample = a.FlockCostSample(grad_E=[1.0, 0.0], dE_dt=-8.0)
        u = a.solve_constrained(state, sample, self.bounds, self.cfg, 11.0, 0.02)
        self.assertLessEqual(u.v * sample.lie_derivative(u.omega * 0.02), 8.0 + 1e-9)
        self.assertAlmostEqual(u.v, 8.0, delta=0.01)

    def test_grid_search(self):
        rng = np.random.default_rng(7)
        dt = 0.02
        for _ in range(10):
            state = a.VehicleState([0.0, 0.0], rng.uniform(-0.1, 0.1))
            sample = a.FlockCostSample(grad_E=rng.uniform(-1.0, 1.0, 2), dE_dt=rng.uniform(-8.0, 8.0))
            v_star = rng.uniform(4.0, 17.0)
            try:
                u = a.solve_constrained(state, sample, self.bounds, self.cfg, v_star, dt)
            except a.Infeasible:
                u = None

            error = self.cfg.heading_error(state.heading)
            omegas = np.linspace(max(-1.0, (-0.1 - error) / dt), min(1.0, (0.1 - error) / dt), 1001)
            speeds = np.linspace(6.0, 15.0, 1001)
            oo, vv = np.meshgrid(omegas, speeds, indexing='ij')
            headings = state.heading + oo * dt
            lie = sample.grad_E[0] * np.cos(headings) + sample.grad_E[1] * np.sin(headings)
            feasible = vv * lie <= -sample.dE_dt
            objective = ((vv - v_star) / 9.0) ** 2 + oo ** 2

            if u is None:
                # omega = 0 is a candidate, so only a gate-infeasible heading fails
                self.assertFalse(a.feasibility_gate(state, sample, self.bounds, self.cfg).feasible)
                continue
            self.assertLessEqual(u.v * sample.lie_derivative(state.heading + u.omega * dt), -sample.dE_dt + 1e-9)
            if np.any(feasible):
                best = np.min(np.where(feasible, objective, np.inf))
                self.assertLessEqual(((u.v - v_star) / 9.0) ** 2 + u.omega ** 2, best + 0.02)


class ControlStepTests(unittest.TestCase):

    def setUp(self):
        self.params = createRavenParams()
        self.cfg = a.ControllerConfig()

    def test_isolated(self):
        decision = a.control_step(a.VehicleState([0.0, 0.0], 0.0), [], self.params, self.cfg, 0.02)
        control, mode = decision
        self.assertEqual(mode, a.ControllerMode.CONSTRAINED)
        self.assertEqual(control.omega, 0.0)
        self.assertAlmostEqual(control.v, a.isolated_airspeed(self.params.drag), places=9)

    def test_downwash_trap(self):
        # directly behind, beyond the wake peak, leader slower than v_min
        state = a.VehicleState([-10.0, 0.0], 0.0)
        decision = a.control_step(state, [createLeader(speed=5.0)], self.params, self.cfg, 0.02)
        self.assertEqual(decision.mode, a.ControllerMode.RELAXED)
        self.assertFalse(decision.gate.feasible)
        self.assertEqual(decision.control.omega, 0.0)
        self.assertLess(decision.cost.upwash_W, 0.0)
        self.assertGreater(decision.v_star, a.isolated_airspeed(self.params.drag))
        self.assertEqual(decision.control.v, self.params.bounds.clamp_speed(decision.v_star))

    def test_past_peak(self):
        state = a.VehicleState([-5.0, 0.0], 0.0)
        decision = a.control_step(state, [createLeader(speed=5.0)], self.params, self.cfg, 0.02)
        self.assertEqual(decision.mode, a.ControllerMode.CONSTRAINED)
        self.assertTrue(decision.gate.feasible)
        self.assertAlmostEqual(decision.control.omega, 0.0, places=12)

    def test_greedy(self):
        cfg = a.ControllerConfig(policy='greedy')
        decision = a.control_step(a.VehicleState([-5.0, 0.0], 0.0), [createLeader(speed=5.0)], self.params, cfg, 0.02)
        self.assertEqual(decision.mode, a.ControllerMode.RELAXED)
        self.assertTrue(decision.gate.feasible)
        self.assertEqual(decision.control.omega, 0.0)

    def test_corridor_violation(self):
        decision = a.control_step(a.VehicleState([0.0, 0.0], 0.5), [], self.params, self.cfg, 0.02)
        self.assertEqual(decision.mode, a.ControllerMode.RELAXED)
        self.assertFalse(decision.gate.premise_ok)
        self.assertEqual(decision.control.omega, -1.0)

    def test_power_objective(self):
        cfg = a.ControllerConfig(objective='power')
        decision = a.control_step(a.VehicleState([0.0, 0.0], 0.0), [], self.params, cfg, 0.02)
        self.assertAlmostEqual(decision.v_star, (95.0 / (3 * 5e-3)) ** 0.25, places=12)
        self.assertEqual(decision.control.v, self.params.bounds.clamp_speed(decision.v_star))


class ConfigTests(unittest.TestCase):

    def test_invalid(self):
        for kwargs in ({'rho': 0.1}, {'epsilon': 0.0}, {'kappa': -1.0}, {'omega_grid': 40},
                       {'refine': 0}, {'objective': 'thrust'}, {'policy': 'random'}):
            with self.assertRaises(ValueError):
                a.ControllerConfig(**kwargs)
        with self.assertRaises(ValueError):
            a.ControlBounds(5.0, 5.0, 1.0)

    def test_mode_names(self):
        self.assertEqual(str(a.ControllerMode.RELAXED), 'relaxed')
        self.assertEqual(str(a.ControllerMode.CONSTRAINED), 'constrained')


@unittest.skipUnless(os.getenv('SLOW_TESTING'), 'Enable only for slow closed-loop runs')
class DownwashTrapTests(unittest.TestCase):

    def test_relaxed_dwell_ends(self):
        cfg, record = a.verify.downwash_trap()
        self.assertEqual(cfg.agent(0).params.bounds, cfg.agent(1).params.bounds)

        follower = record.agent_index(1)
        modes = record.column('mode')[:, follower]
        gates = [frame[follower].gate_feasible for frame in record.frames]
        self.assertEqual([m == 'relaxed' for m in modes], [not g for g in gates])

        relaxed = np.flatnonzero(modes == 'relaxed')
        self.assertEqual(relaxed[0], 0)
        self.assertLess(relaxed[-1] + 1, len(record))
        self.assertLess(record.times[relaxed[-1] + 1], cfg.duration)

if __name__ == '__main__':
    unittest.main()
