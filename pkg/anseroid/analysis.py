#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Post-run metrics over trajectory records: cost ledgers, V and echelon
detection, flock stability, and the paired experiments contrasting greedy
and constraint-driven flocks.
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import logging

import numpy as np

from anseroid.aeroforces import roll_moment, upwash_force
from anseroid.controller import ControllerMode
from anseroid.drag import isolated_airspeed, optimal_airspeed
from anseroid.scenarioconf import scenario_with
from anseroid.sim import run_scenario
from anseroid.utils import wrap_angle
from anseroid.wake import spanwise_profile

logger = logging.getLogger(__name__)

LATERAL_TOLERANCE_SPANS = 0.1
STABLE_SPEED_FRACTION = 0.01


class LedgerEntry:

    def __init__(self, total, maximum, minimum, terminal):
        self.total = float(total)
        self.maximum = float(maximum)
        self.minimum = float(minimum)
        self.terminal = float(terminal)

    def to_dict(self):
        return {'total': self.total, 'max': self.maximum, 'min': self.minimum, 'terminal': self.terminal}


class CostLedger(dict):
    """Agent id -> LedgerEntry."""

    def to_dict(self):
        return dict((str(k), v.to_dict()) for k, v in self.items())


def cost_ledger(record):
    if not len(record):
        raise ValueError("cost ledger of an empty record")

    cost = record.column('cost_E')
    ledger = CostLedger()
    for i, id in enumerate(record.agent_ids):
        series = cost[:, i]
        ledger[id] = LedgerEntry(np.sum(series[:-1]) * record.dt, np.max(series), np.min(series), series[-1])
    return ledger


class FormationMetrics:

    def __init__(self, branch, scores, mean_lateral_gap, mean_streamwise_gap, gap_fraction, shape, leader):
        self.branch = branch
        self.scores = scores
        self.mean_lateral_gap = mean_lateral_gap
        self.mean_streamwise_gap = mean_streamwise_gap
        self.gap_fraction = gap_fraction
        self.shape = shape
        self.leader = leader

    @property
    def is_v(self):
        return self.shape == 'V'

    def to_dict(self):
        return {
            'shape': self.shape,
            'leader': self.leader,
            'branch': dict((str(k), v) for k, v in self.branch.items()),
            'scores': self.scores,
            'mean_lateral_gap': self.mean_lateral_gap,
            'mean_streamwise_gap': self.mean_streamwise_gap,
            'gap_fraction': self.gap_fraction,
        }


def _flock_frame(positions, theta_g):
    along = positions @ np.array([np.cos(theta_g), np.sin(theta_g)])
    lateral = positions @ np.array([-np.sin(theta_g), np.cos(theta_g)])
    return along, lateral

def _chain_stats(chain, along, lateral, tolerance=0.0):
    # a well-placed follower is further out and further back than its predecessor
    increasing, lateral_gaps, streamwise_gaps = [], [], []
    for prev, cur in zip(chain, chain[1:]):
        increasing.append(abs(lateral[cur]) > abs(lateral[prev]) and along[prev] - along[cur] > tolerance)
        lateral_gaps.append(abs(lateral[cur] - lateral[prev]))
        streamwise_gaps.append(along[prev] - along[cur])
    return increasing, lateral_gaps, streamwise_gaps

def classify_formation(positions, ids, theta_g, half_span, gap_window_spans=(np.sqrt(2.0), 2.5),
                       score_threshold=0.9):
    """Formation metrics of a single snapshot of positions."""

    along, lateral = _flock_frame(np.asarray(positions, dtype=float).reshape(-1, 2), theta_g)
    order = list(np.argsort(-along, kind='stable'))
    leader = order[0]
    lateral = lateral - lateral[leader]

    tolerance = LATERAL_TOLERANCE_SPANS * half_span
    chains = {
        'left': [leader] + [i for i in order[1:] if lateral[i] > tolerance],
        'right': [leader] + [i for i in order[1:] if lateral[i] < -tolerance],
        'center': [leader] + [i for i in order[1:] if abs(lateral[i]) <= tolerance],
    }

    branch = {ids[leader]: 'lead'}
    scores = {}
    lateral_gaps, streamwise_gaps = [], []
    for name, chain in chains.items():
        for i in chain[1:]:
            branch[ids[i]] = name
        increasing, lat, stream = _chain_stats(chain, along, lateral, tolerance)
        lateral_gaps += lat
        streamwise_gaps += stream
        if name != 'center':
            scores[name] = float(np.mean(increasing)) if increasing else 1.0

    lo, hi = gap_window_spans[0] * half_span, gap_window_spans[1] * half_span
    winged = [g for name in ('left', 'right') for g in _chain_stats(chains[name], along, lateral)[1]]
    gap_fraction = float(np.mean([lo < g < hi for g in winged])) if winged else 0.0

    filled = [name for name in ('left', 'right') if len(chains[name]) > 1]
    good = all(scores[name] >= score_threshold for name in filled) and gap_fraction >= score_threshold
    if len(chains['center']) > 1 or not filled or not good:
        shape = 'none'
    elif len(filled) == 2:
        shape = 'V'
    else:
        shape = 'echelon'

    return FormationMetrics(branch, scores,
                            float(np.mean(lateral_gaps)) if lateral_gaps else 0.0,
                            float(np.mean(streamwise_gaps)) if streamwise_gaps else 0.0,
                            gap_fraction, shape, ids[leader])

def detect_formation(record, at_time, gap_window_spans=None, score_threshold=None):
    cfg = record.config
    analysis = cfg.analysis
    half_span = float(np.mean([a.params.aero.half_span for a in cfg.agents]))

    tick = record.tick_at(at_time)
    return classify_formation(record.positions()[tick], record.agent_ids, cfg.controller.theta_g, half_span,
                              gap_window_spans or analysis.gap_window_spans,
                              analysis.score_threshold if score_threshold is None else score_threshold)


class StabilityReport:

    def __init__(self, stable, speed_residuals, heading_residuals, flagged, window):
        self.stable = stable
        self.speed_residuals = speed_residuals
        self.heading_residuals = heading_residuals
        self.flagged = flagged
        self.window = window

    def __bool__(self):
        return self.stable

    def to_dict(self):
        return {
            'stable': self.stable,
            'window': self.window,
            'speed_residuals': dict((str(k), v) for k, v in self.speed_residuals.items()),
            'heading_residuals': dict((str(k), v) for k, v in self.heading_residuals.items()),
            'flagged': self.flagged,
        }


def stability_check(record, window):
    """Whether speeds and headings have settled over the final *window* seconds.

    A speed residual is the speed range over the window as a fraction of the
    agent's speed bounds; a heading residual is the largest heading
    difference to any other agent over the window.
    """

    cfg = record.config
    times = np.asarray(record.times)
    if window > times[-1] - times[0] + 1e-9:
        raise ValueError("window {0} s exceeds the record duration".format(window))

    tail = times >= times[-1] - window - 1e-9
    speeds = record.column('v')[tail]
    errors = np.vectorize(wrap_angle)(record.column('theta')[tail] - cfg.controller.theta_g)
    spread = errors[:, :, None] - errors[:, None, :]

    speed_residuals, heading_residuals, flagged = {}, {}, []
    for i, id in enumerate(record.agent_ids):
        bounds = cfg.agent(id).bounds
        speed_residuals[id] = float((np.max(speeds[:, i]) - np.min(speeds[:, i])) / (bounds.v_max - bounds.v_min))
        heading_residuals[id] = float(np.max(np.abs(spread[:, i, :])))
        if speed_residuals[id] >= STABLE_SPEED_FRACTION or heading_residuals[id] > cfg.controller.epsilon:
            flagged.append(id)

    return StabilityReport(not flagged, speed_residuals, heading_residuals, flagged, float(window))


def cost_minimizer(aero, kappa, points=401):
    """Grid minimiser (x, y, E) of the cost to flock behind one frozen wake."""

    b, mu, sigma = aero.half_span, aero.shape.mu, aero.shape.sigma
    x = np.linspace(-mu - 4.0 * sigma, 0.0, points)
    y = np.linspace(0.0, 4.0 * b, points)
    xx, yy = np.meshgrid(x, y, indexing='ij')
    cost = kappa * np.abs(roll_moment(xx, yy, aero.vortex, aero.shape)) - upwash_force(xx, yy, aero.vortex, aero.shape)
    i, j = np.unravel_index(np.argmin(cost), cost.shape)
    return float(x[i]), float(y[j]), float(cost[i, j])


class DivergenceResult:

    def __init__(self, times, separation, upwash, contrast=None, trailing=None, target=None):
        self.times = times
        self.separation = separation
        self.upwash = upwash
        self.contrast = contrast
        self.trailing = trailing
        self.target = target

    @property
    def pairs(self):
        return list(self.separation)

    def increasing_span(self, pair, threshold=1e-6):
        """Number of ticks from the start while the follower upwash stays above *threshold* of its initial value."""

        w = self.upwash[pair]
        below = np.flatnonzero(w < threshold * w[0])
        return int(below[0]) if len(below) else len(w)

    def strictly_increasing(self, pair, threshold=1e-6):
        span = self.increasing_span(pair, threshold)
        return bool(np.all(np.diff(self.separation[pair][:span]) > 0))

    def converged(self, pair, fraction=0.25, tolerance=0.1):
        """Whether the constraint-driven follower trails at the cost minimiser over the final *fraction*.

        Every trailing distance of the tail must lie within *tolerance* of
        the minimiser's trailing distance behind the frozen leader wake.
        """

        trailing = self.trailing[pair]
        tail = trailing[int(len(trailing) * (1.0 - fraction)):]
        return bool(np.all(np.abs(tail - self.target) <= tolerance * self.target))


def leader_pairs(cfg):
    """(leader, follower) id pairs: each agent's leader is the neighbor ahead whose wake lifts it most at t = 0."""

    pairs = []
    for follower in cfg.agents:
        best, best_w = None, 0.0
        for leader in cfg.agents:
            if leader is follower:
                continue
            x, y = _offset(follower, leader)
            if x >= 0:
                continue
            aero = leader.params.aero
            w = upwash_force(x, y, aero.vortex, aero.shape)
            if w > best_w:
                best, best_w = leader, w
        if best is not None:
            pairs.append((best.id, follower.id))
    return pairs

def _offset(agent, leader):
    s = agent.state.position - leader.state.position
    theta = leader.state.heading
    return float(s @ [np.cos(theta), np.sin(theta)]), float(s @ [-np.sin(theta), np.cos(theta)])

def _separation(record, pairs):
    positions = record.positions()
    headings = record.column('theta')
    separation, upwash, trailing = {}, {}, {}
    w = record.column('upwash_W')
    for leader, follower in pairs:
        i, j = record.agent_index(leader), record.agent_index(follower)
        offset = positions[:, j] - positions[:, i]
        separation[(leader, follower)] = np.linalg.norm(offset, axis=1)
        upwash[(leader, follower)] = w[:, j]
        # distance behind the leader along its heading
        trailing[(leader, follower)] = -(offset[:, 0] * np.cos(headings[:, i]) + offset[:, 1] * np.sin(headings[:, i]))
    return separation, upwash, trailing

def greedy_divergence_experiment(cfg):
    """Fly *cfg* with every agent greedy, and again constraint-driven.

    Returns separations per (leader, follower) pair for the greedy run,
    with the constraint-driven separations as the contrast.  The
    constraint-driven trailing distances are kept for comparison with the
    trailing distance of the leader's cost minimiser.
    """

    pairs = leader_pairs(cfg)
    if not pairs:
        return DivergenceResult([], {}, {}, {}, {})

    greedy = run_scenario(scenario_with(cfg, controller={'policy': 'greedy'}))
    paired = run_scenario(scenario_with(cfg, controller={'policy': 'anseroid'}))

    separation, upwash, _ = _separation(greedy, pairs)
    contrast, _, trailing = _separation(paired, pairs)
    leader = cfg.agent(pairs[0][0])
    target = -cost_minimizer(leader.params.aero, cfg.controller.kappa)[0]
    logger.info("divergence experiment over %d pairs, minimiser trails %.3f m", len(pairs), target)
    return DivergenceResult(np.asarray(greedy.times), separation, upwash, contrast, trailing, target)


def tracking_error(record, window):
    """Mean |v - v*| over the final *window* seconds, v* from the recorded upwash."""

    cfg = record.config
    times = np.asarray(record.times)
    tail = times >= times[-1] - window - 1e-9
    speeds = record.column('v')[tail]
    upwash = record.column('upwash_W')[tail]

    errors = []
    for i, id in enumerate(record.agent_ids):
        params = cfg.agent(id).params
        target = [params.bounds.clamp_speed(optimal_airspeed(w, params.drag, cfg.controller.objective))
                  for w in upwash[:, i]]
        errors.append(np.abs(speeds[:, i] - target))
    return float(np.mean(errors))

def heterogeneity_experiment(cfg, window=None):
    """Compare flocks that differ only in where the slowest vehicle flies.

    The vehicle parameters of *cfg*'s agents are reassigned over the same
    initial positions: slowest isolated airspeed at the front, slowest at the
    rear, and every agent given the front agent's parameters.  Returns the
    steady-state tracking error of each arrangement.
    """

    doc = cfg.to_dict()
    window = window or cfg.analysis.stability_window
    along = [a['x'] * np.cos(cfg.controller.theta_g) + a['y'] * np.sin(cfg.controller.theta_g) for a in doc['agents']]
    front_to_back = list(np.argsort(-np.asarray(along), kind='stable'))

    keys = ('gamma', 'omega', 'half_span', 'mu', 'sigma', 'lift', 'c1', 'c2', 'v_min', 'v_max', 'omega_max')
    vehicles = [dict((k, a[k]) for k in keys) for a in doc['agents']]
    by_speed = sorted(range(len(vehicles)), key=lambda i: isolated_airspeed(cfg.agents[i].params.drag))

    arrangements = {
        'slowest_front': by_speed,
        'slowest_rear': by_speed[::-1],
        'homogeneous': [front_to_back[0]] * len(vehicles),
    }

    result = {}
    for name, assignment in arrangements.items():
        agents = []
        for slot, source in zip(front_to_back, assignment):
            agent = dict(doc['agents'][slot])
            agent.pop('r_star', None)
            agent.pop('speed', None)
            agent.update(vehicles[source])
            agents.append(agent)
        agents.sort(key=lambda a: a['id'])
        record = run_scenario(scenario_with(cfg, agents=agents))
        result[name] = tracking_error(record, window)
    return result


def mode_fractions(record):
    modes = record.column('mode')
    relaxed = str(ControllerMode.RELAXED)
    return dict((id, float(np.mean(modes[:, i] == relaxed))) for i, id in enumerate(record.agent_ids))

def cost_table(record):
    rows = [['t'] + ['E_{0}'.format(id) for id in record.agent_ids]]
    for t, frame in zip(record.times, record.frames):
        rows.append([t] + [s.cost_E for s in frame])
    return rows

def flock_shape_table(record, count):
    """Front-to-back polylines per branch at *count* evenly spaced instants."""

    cfg = record.config
    half_span = float(np.mean([a.params.aero.half_span for a in cfg.agents]))
    rows = [['t', 'branch', 'order', 'id', 'x', 'y']]
    positions = record.positions()
    for t in np.linspace(record.times[0], record.times[-1], count):
        tick = record.tick_at(t)
        metrics = classify_formation(positions[tick], record.agent_ids, cfg.controller.theta_g, half_span)
        along, _ = _flock_frame(positions[tick], cfg.controller.theta_g)
        for name in ('left', 'right', 'center'):
            members = [i for i, id in enumerate(record.agent_ids)
                       if metrics.branch[id] in ('lead', name)]
            members.sort(key=lambda i: -along[i])
            if len(members) < 2:
                continue
            for order, i in enumerate(members):
                rows.append([record.times[tick], name, order, record.agent_ids[i],
                             positions[tick, i, 0], positions[tick, i, 1]])
    return rows

def spanwise_profile_table(vortex, points=401, extent=4.0):
    y = np.linspace(-extent * vortex.half_span, extent * vortex.half_span, points)
    f = spanwise_profile(y, vortex)
    return [['y', 'f']] + [[a, b] for a, b in zip(y, f)]

def wake_field_grid(aero, kappa, points=81):
    """Upwash, rolling tendency and cost to flock behind one vehicle."""

    b, mu, sigma = aero.half_span, aero.shape.mu, aero.shape.sigma
    x = np.linspace(-mu - 3.0 * sigma, sigma, points)
    y = np.linspace(-4.0 * b, 4.0 * b, points)
    rows = [['x', 'y', 'w', 'm', 'E']]
    for xi in x:
        w = upwash_force(xi, y, aero.vortex, aero.shape)
        m = roll_moment(xi, y, aero.vortex, aero.shape)
        for yi, wi, mi in zip(y, w, m):
            rows.append([xi, yi, wi, mi, kappa * abs(mi) - wi])
    return rows


def summarize(record):
    cfg = record.config
    ledger = cost_ledger(record)
    formation = detect_formation(record, cfg.analysis.formation_time)
    stability = stability_check(record, cfg.analysis.stability_window)
    positions = record.positions()
    travel = np.linalg.norm(positions[-1] - positions[0], axis=1)

    return {
        'name': cfg.name,
        'agents': len(record.agent_ids),
        'ticks': len(record),
        'duration': record.times[-1],
        'ledger': ledger.to_dict(),
        'formation': formation.to_dict(),
        'stability': stability.to_dict(),
        'stable': stability.stable,
        'relaxed_fraction': dict((str(k), v) for k, v in mode_fractions(record).items()),
        'travel': dict((str(id), float(d)) for id, d in zip(record.agent_ids, travel)),
    }
