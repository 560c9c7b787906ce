#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import logging
import math
import time

import numpy as np
from joblib import Parallel, delayed

from anseroid.aeroforces import NeighborSnapshot
from anseroid.controller import control_step
from anseroid.trajectory import AgentSample, TrajectoryRecord
from anseroid.utils import wrap_angle

logger = logging.getLogger(__name__)

STRAIGHT_TURN_RATE = 1e-9


class NumericalError(Exception):

    def __init__(self, tick, message):
        super().__init__("tick {0}: {1}".format(tick, message))
        self.tick = tick


class VehicleState:

    def __init__(self, position, heading):
        self.position = np.array(position, dtype=float).reshape(2)
        self.heading = wrap_angle(float(heading))

    def is_finite(self):
        return bool(np.all(np.isfinite(self.position))) and math.isfinite(self.heading)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            np.array_equal(self.position, other.position) and self.heading == other.heading

    def __repr__(self):
        return "VehicleState(position=[{0!r}, {1!r}], heading={2!r})".format(
            self.position[0], self.position[1], self.heading)


def integrate_step(state, u, dt):
    """Advance the unicycle over *dt* under constant (v, omega)."""

    theta = state.heading
    if abs(u.omega) < STRAIGHT_TURN_RATE:
        step = u.v * dt * np.array([math.cos(theta), math.sin(theta)])
        return VehicleState(state.position + step, theta)

    turned = theta + u.omega * dt
    radius = u.v / u.omega
    step = radius * np.array([math.sin(turned) - math.sin(theta), math.cos(theta) - math.cos(turned)])
    return VehicleState(state.position + step, turned)


class _Evaluator:
    """Runs one tick's controller evaluations, in parallel when asked to."""

    def __init__(self, threads):
        self.threads = threads
        self._parallel = None

    def __enter__(self):
        if self.threads > 1:
            self._parallel = Parallel(n_jobs=self.threads, prefer='threads')
            self._parallel.__enter__()
        return self

    def __exit__(self, *exc):
        if self._parallel is not None:
            self._parallel.__exit__(*exc)
            self._parallel = None

    def __call__(self, func, jobs):
        if self._parallel is None:
            return [func(*job) for job in jobs]
        return self._parallel(delayed(func)(*job) for job in jobs)


def world_snapshot(cfg, states, speeds):
    return [NeighborSnapshot(state, speed, agent.params.aero)
            for agent, state, speed in zip(cfg.agents, states, speeds)]

def _decide(index, snapshot, params, controller, dt):
    neighbors = snapshot[:index] + snapshot[index + 1:]
    return control_step(snapshot[index].pose, neighbors, params, controller, dt)

def run_scenario(cfg, progress=None):
    """Simulate *cfg* and return the full trajectory record.

    Every tick all agents decide on the same immutable snapshot, with
    neighbor speeds frozen at their last applied values; the decisions are
    then applied together.  The last tick is recorded but not integrated.
    """

    states = [agent.state for agent in cfg.agents]
    speeds = [agent.speed for agent in cfg.agents]
    record = TrajectoryRecord(cfg.agent_ids, cfg.dt, cfg)
    ticks = cfg.tick_count

    logger.info("running '%s': %d agents, %d ticks of %g s", cfg.name, len(states), ticks, cfg.dt)

    with _Evaluator(cfg.threads) as evaluate:
        for tick in range(ticks):
            snapshot = world_snapshot(cfg, states, speeds)
            jobs = [(i, snapshot, agent.params, cfg.controller, cfg.dt) for i, agent in enumerate(cfg.agents)]

            started = time.perf_counter()
            decisions = evaluate(_decide, jobs)
            record.timings.append(time.perf_counter() - started)

            for agent, decision in zip(cfg.agents, decisions):
                u = decision.control
                if not (math.isfinite(u.v) and math.isfinite(u.omega) and math.isfinite(decision.cost.cost_E)):
                    raise NumericalError(tick, "non-finite control or cost for agent {0}".format(agent.id))

            record.append(tick * cfg.dt, [AgentSample.from_decision(agent.id, state, decision)
                                          for agent, state, decision in zip(cfg.agents, states, decisions)])

            if tick < ticks - 1:
                states = [integrate_step(state, d.control, cfg.dt) for state, d in zip(states, decisions)]
                speeds = [d.control.v for d in decisions]
                for agent, state in zip(cfg.agents, states):
                    if not state.is_finite():
                        raise NumericalError(tick + 1, "non-finite state for agent {0}".format(agent.id))

            if progress is not None:
                progress(tick + 1, ticks)

    return record
