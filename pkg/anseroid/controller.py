#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Per-agent switched control law.  Each tick an agent tracks its
drag-minimising airspeed while keeping the cost to flock from increasing
(constrained mode); when no admissible turn rate allows that, it falls back
to flying at the clamped optimal airspeed straight ahead (relaxed mode).
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import enum
import logging

import numpy as np

from anseroid.aeroforces import flock_cost
from anseroid.drag import OBJECTIVES, optimal_airspeed
from anseroid.utils import wrap_angle

logger = logging.getLogger(__name__)

LIE_TOLERANCE = 1e-12
PREMISE_TOLERANCE = 1e-12
POLICIES = ('anseroid', 'greedy')


class Infeasible(Exception):
    pass


class ControllerMode(enum.Enum):
    CONSTRAINED = 'constrained'
    RELAXED = 'relaxed'

    def __str__(self):
        return self.value


class ControlInput:

    def __init__(self, v, omega):
        self.v = float(v)
        self.omega = float(omega)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            self.v == other.v and self.omega == other.omega

    def __repr__(self):
        return "ControlInput(v={0!r}, omega={1!r})".format(self.v, self.omega)


class ControlBounds:

    def __init__(self, v_min, v_max, omega_max):
        if not 0 < v_min < v_max:
            raise ValueError("speed bounds must satisfy 0 < v_min < v_max")
        if omega_max <= 0:
            raise ValueError("omega_max must be positive")

        self.v_min = float(v_min)
        self.v_max = float(v_max)
        self.omega_max = float(omega_max)

    def clamp_speed(self, v):
        return max(min(v, self.v_max), self.v_min)

    def clamp_turn_rate(self, omega):
        return max(min(omega, self.omega_max), -self.omega_max)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            (self.v_min, self.v_max, self.omega_max) == (other.v_min, other.v_max, other.omega_max)

    def __repr__(self):
        return "ControlBounds(v_min={0!r}, v_max={1!r}, omega_max={2!r})".format(
            self.v_min, self.v_max, self.omega_max)


class ControllerConfig:

    def __init__(self, rho=0.0, epsilon=0.1, theta_g=0.0, kappa=0.25,
                 omega_grid=41, refine=10, objective='drag', policy='anseroid',
                 cutoff_gain=1e-9, cutoff_spans=8.0):
        if rho > 0:
            raise ValueError("rho must not be positive")
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if kappa < 0:
            raise ValueError("kappa must be non-negative")
        if omega_grid < 3 or omega_grid % 2 == 0:
            raise ValueError("omega_grid must be an odd number of at least 3")
        if refine < 1:
            raise ValueError("refine must be at least 1")
        if objective not in OBJECTIVES:
            raise ValueError("objective must be one of {0}".format(', '.join(OBJECTIVES)))
        if policy not in POLICIES:
            raise ValueError("policy must be one of {0}".format(', '.join(POLICIES)))

        self.rho = float(rho)
        self.epsilon = float(epsilon)
        self.theta_g = wrap_angle(float(theta_g))
        self.kappa = float(kappa)
        self.omega_grid = int(omega_grid)
        self.refine = int(refine)
        self.objective = objective
        self.policy = policy
        self.cutoff_gain = float(cutoff_gain)
        self.cutoff_spans = float(cutoff_spans)

    def heading_error(self, heading):
        return wrap_angle(heading - self.theta_g)

    def to_dict(self):
        return dict(self.__dict__)


class AgentParams:
    """Aerodynamic, drag and actuation parameters of one agent."""

    def __init__(self, aero, drag, bounds):
        self.aero = aero
        self.drag = drag
        self.bounds = bounds


class GateResult:

    def __init__(self, feasible, interval, lie_derivative, premise_ok=True):
        self.feasible = feasible
        self.interval = interval
        self.lie_derivative = lie_derivative
        self.premise_ok = premise_ok

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        return "GateResult(feasible={0}, interval={1}, lie_derivative={2:.6g}, premise_ok={3})".format(
            self.feasible, self.interval, self.lie_derivative, self.premise_ok)


class ControlDecision:

    def __init__(self, control, mode, cost, gate, v_star):
        self.control = control
        self.mode = mode
        self.cost = cost
        self.gate = gate
        self.v_star = v_star

    def __iter__(self):
        return iter((self.control, self.mode))


def _speed_intervals(lie, rhs, bounds):
    """Speeds in bounds with v*lie <= rhs, for every entry of *lie*."""

    lie = np.asarray(lie, dtype=float)
    ahead = lie > LIE_TOLERANCE
    behind = lie < -LIE_TOLERANCE
    flat = ~(ahead | behind)

    with np.errstate(divide='ignore', invalid='ignore'):
        edge = rhs / lie

    lo = np.where(behind, np.maximum(bounds.v_min, edge), bounds.v_min)
    hi = np.where(ahead, np.minimum(bounds.v_max, edge), bounds.v_max)
    feasible = np.where(flat, rhs >= -LIE_TOLERANCE, lo <= hi)
    return lo, hi, feasible

def feasibility_gate(state, cost, bounds, cfg):
    lie = cost.lie_derivative(state.heading)

    if abs(cfg.heading_error(state.heading)) > cfg.epsilon + PREMISE_TOLERANCE:
        return GateResult(False, None, lie, premise_ok=False)

    lo, hi, feasible = _speed_intervals(lie, cfg.rho - cost.dE_dt, bounds)
    if not feasible:
        return GateResult(False, None, lie)
    return GateResult(True, (float(lo), float(hi)), lie)

def _turn_corridor(state, bounds, cfg, dt):
    error = cfg.heading_error(state.heading)
    width = cfg.epsilon + PREMISE_TOLERANCE
    lo = max(-bounds.omega_max, (-width - error) / dt)
    hi = min(bounds.omega_max, (width - error) / dt)
    return lo, hi

def _evaluate(omegas, state, cost, bounds, cfg, v_star, dt):
    headings = state.heading + omegas * dt
    lie = cost.grad_E[0] * np.cos(headings) + cost.grad_E[1] * np.sin(headings)
    lo, hi, feasible = _speed_intervals(lie, cfg.rho - cost.dE_dt, bounds)

    v = np.clip(v_star, lo, hi)
    objective = ((v - v_star) / (bounds.v_max - bounds.v_min)) ** 2 + (omegas / bounds.omega_max) ** 2
    return v, objective, feasible

def _select(omegas, v, objective, feasible, v_star):
    if not np.any(feasible):
        return None

    idx = np.flatnonzero(feasible)
    order = np.lexsort((np.abs(v[idx] - v_star), np.abs(omegas[idx]), objective[idx]))
    return idx[order[0]]

def solve_constrained(state, cost, bounds, cfg, v_star, dt):
    """Best (v, omega) on a turn-rate grid that keeps E from increasing.

    For a fixed turn rate the descent constraint is linear in v, so each
    grid point carries an interval of feasible speeds and the optimal speed
    is v_star clamped into it.  One refinement pass at *cfg.refine* times
    the grid resolution follows around the incumbent.
    """

    lo, hi = _turn_corridor(state, bounds, cfg, dt)
    if lo > hi:
        raise Infeasible("heading corridor unreachable within one step")

    omegas = np.linspace(lo, hi, cfg.omega_grid)
    if lo <= 0.0 <= hi:
        omegas = np.append(omegas, 0.0)

    v, objective, feasible = _evaluate(omegas, state, cost, bounds, cfg, v_star, dt)
    best = _select(omegas, v, objective, feasible, v_star)
    if best is None:
        raise Infeasible("no admissible turn rate descends the cost to flock")

    step = (hi - lo) / (cfg.omega_grid - 1)
    if step > 0:
        fine = np.linspace(max(lo, omegas[best] - step), min(hi, omegas[best] + step), 2 * cfg.refine + 1)
        fine_v, fine_objective, fine_feasible = _evaluate(fine, state, cost, bounds, cfg, v_star, dt)

        omegas = np.append(omegas[best], fine)
        v = np.append(v[best], fine_v)
        objective = np.append(objective[best], fine_objective)
        feasible = np.append(True, fine_feasible)
        best = _select(omegas, v, objective, feasible, v_star)

    return ControlInput(v[best], omegas[best])

def solve_relaxed(state, bounds, cfg, v_star):
    return ControlInput(bounds.clamp_speed(v_star), 0.0)

def control_step(state, neighbors, params, cfg, dt):
    cost = flock_cost(state.position, neighbors, cfg.kappa, cfg.cutoff_gain, cfg.cutoff_spans)
    v_star = optimal_airspeed(cost.upwash_W, params.drag, cfg.objective)
    gate = feasibility_gate(state, cost, params.bounds, cfg)

    if not gate.premise_ok:
        # steer back into the heading corridor before anything else
        error = cfg.heading_error(state.heading)
        logger.warning("heading %.4f rad outside corridor around %.4f rad", state.heading, cfg.theta_g)
        control = ControlInput(params.bounds.clamp_speed(v_star), params.bounds.clamp_turn_rate(-error / dt))
        return ControlDecision(control, ControllerMode.RELAXED, cost, gate, v_star)

    if cfg.policy == 'greedy':
        control = solve_relaxed(state, params.bounds, cfg, v_star)
        return ControlDecision(control, ControllerMode.RELAXED, cost, gate, v_star)

    if gate.feasible:
        # omega = 0 is admissible whenever the gate is, so the search succeeds
        try:
            control = solve_constrained(state, cost, params.bounds, cfg, v_star, dt)
            return ControlDecision(control, ControllerMode.CONSTRAINED, cost, gate, v_star)
        except Infeasible as e:
            logger.warning("constrained search failed on a feasible gate: %s", e)
            gate = GateResult(False, None, gate.lie_derivative)

    logger.debug("relaxed (L_fE=%.6g, dE_dt=%.6g)", gate.lie_derivative, cost.dE_dt)
    control = solve_relaxed(state, params.bounds, cfg, v_star)
    return ControlDecision(control, ControllerMode.RELAXED, cost, gate, v_star)
