#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Scenario documents.  A scenario is a JSON file with the sections
``simulation``, ``controller``, ``wake``, ``vehicle``, ``agents`` or
``formation``, ``analysis`` and ``outputs``; every value is in SI units.
Loading validates each field and reports problems by key path, and
``ScenarioConfig.to_dict`` gives back the document with every default
spelled out.
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import codecs
import copy
import json
import math
import os

import numpy as np

from anseroid.controller import AgentParams, ControlBounds, ControllerConfig
from anseroid.drag import DragParams, isolated_airspeed
from anseroid.sim import VehicleState
from anseroid.utils import apply_override, format_key, parse_override
from anseroid.wake import AeroParams, VortexParams, WakeShape

VEHICLE_KEYS = ('gamma', 'omega', 'r_star', 'half_span', 'mu', 'sigma', 'lift',
                'c1', 'c2', 'v_min', 'v_max', 'omega_max')
LAYOUTS = ('line_abreast',)


class ConfigError(Exception):

    def __init__(self, key, message):
        super().__init__("{0}: {1}".format(key, message))
        self.key = key


class _Section:
    """Typed access to one mapping of the raw document."""

    def __init__(self, doc, path):
        if doc is None:
            doc = {}
        if not isinstance(doc, dict):
            raise ConfigError(format_key(path), "expected a mapping")
        self._doc = doc
        self._path = path
        self._seen = set()

    def key(self, name):
        return format_key(self._path + [name])

    def has(self, name):
        return name in self._doc

    def number(self, name, default=None, check=None, message=None):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if value is None:
            raise ConfigError(self.key(name), "is required")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigError(self.key(name), "expected a finite number, got {0!r}".format(value))
        if check is not None and not check(value):
            raise ConfigError(self.key(name), message)
        return float(value)

    def integer(self, name, default=None, check=None, message=None):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if value is None:
            raise ConfigError(self.key(name), "is required")
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(self.key(name), "expected an integer, got {0!r}".format(value))
        if check is not None and not check(value):
            raise ConfigError(self.key(name), message)
        return value

    def choice(self, name, default, choices):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if value not in choices:
            raise ConfigError(self.key(name), "expected one of {0}, got {1!r}".format(', '.join(choices), value))
        return value

    def text(self, name, default):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if not isinstance(value, str):
            raise ConfigError(self.key(name), "expected a string")
        return value

    def flag(self, name, default):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if not isinstance(value, bool):
            raise ConfigError(self.key(name), "expected true or false")
        return value

    def pair(self, name, default):
        self._seen.add(name)
        value = self._doc.get(name, default)
        if not isinstance(value, list) or len(value) != 2 or not all(isinstance(x, (int, float)) for x in value):
            raise ConfigError(self.key(name), "expected a list of two numbers")
        if not value[0] < value[1]:
            raise ConfigError(self.key(name), "lower end must be below upper end")
        return [float(value[0]), float(value[1])]

    def section(self, name):
        self._seen.add(name)
        return _Section(self._doc.get(name), self._path + [name])

    def ignore(self, *names):
        self._seen.update(names)

    def finish(self):
        unknown = sorted(set(self._doc) - self._seen)
        if unknown:
            raise ConfigError(self.key(unknown[0]), "unknown key")


def _positive(value):
    return value > 0


class AgentSpec:

    def __init__(self, id, state, params, speed):
        self.id = id
        self.state = state
        self.params = params
        self.speed = float(speed)

    @property
    def bounds(self):
        return self.params.bounds


class AnalysisConfig:

    def __init__(self, stability_window, formation_time, gap_window_spans, score_threshold, snapshots):
        self.stability_window = stability_window
        self.formation_time = formation_time
        self.gap_window_spans = gap_window_spans
        self.score_threshold = score_threshold
        self.snapshots = snapshots


class OutputConfig:

    def __init__(self, directory, plots):
        self.directory = directory
        self.plots = plots


class ScenarioConfig:

    def __init__(self, name, agents, controller, dt, duration, seed=0, threads=1,
                 analysis=None, outputs=None, resolved=None):
        if dt <= 0:
            raise ValueError("dt must be positive")
        if duration <= dt:
            raise ValueError("duration must exceed dt")
        if not agents:
            raise ValueError("at least one agent is required")

        self.name = name
        self.agents = agents
        self.controller = controller
        self.dt = float(dt)
        self.duration = float(duration)
        self.seed = seed
        self.threads = threads
        self.analysis = analysis or AnalysisConfig(0.25 * duration, duration, [math.sqrt(2.0), 2.5], 0.9, 6)
        self.outputs = outputs or OutputConfig(os.path.join('out', name), True)
        self._resolved = resolved

    @property
    def tick_count(self):
        return int(math.floor(self.duration / self.dt + 1e-9)) + 1

    @property
    def agent_ids(self):
        return [a.id for a in self.agents]

    def agent(self, id):
        for a in self.agents:
            if a.id == id:
                return a
        raise KeyError(id)

    def to_dict(self):
        return copy.deepcopy(self._resolved)

    @classmethod
    def from_dict(self, doc):
        return _build(doc)

    @classmethod
    def load(self, path, overrides=()):
        return load_scenario(path, overrides)


def _vehicle(section, base):
    """Resolve vehicle parameters from *section* falling back to *base*."""

    values = dict(base)
    if section.has('r_star') and not section.has('omega'):
        values.pop('omega', None)
    for name in VEHICLE_KEYS:
        if section.has(name):
            values[name] = section.number(name, check=_positive, message="must be positive")

    for name in ('gamma', 'half_span', 'lift', 'c1', 'c2', 'v_min', 'v_max', 'omega_max'):
        if name not in values:
            raise ConfigError(section.key(name), "is required")
    if 'omega' not in values and 'r_star' not in values:
        raise ConfigError(section.key('omega'), "either omega or r_star is required")
    return values

def _agent_params(values, key):
    def build(name, make):
        try:
            return make()
        except ValueError as e:
            raise ConfigError('{0}.{1}'.format(key, name), str(e))

    if 'omega' in values:
        vortex = build('half_span', lambda: VortexParams(values['gamma'], values['omega'], values['half_span']))
    else:
        vortex = build('half_span', lambda: VortexParams.from_core_radius(
            values['gamma'], values['r_star'], values['half_span']))
    default_shape = WakeShape.for_half_span(vortex.half_span)
    shape = WakeShape(values.get('mu', default_shape.mu), values.get('sigma', default_shape.sigma))
    aero = AeroParams(vortex, shape, values['lift'])
    drag = DragParams(values['c1'], values['c2'], values['lift'])
    bounds = build('v_min', lambda: ControlBounds(values['v_min'], values['v_max'], values['omega_max']))

    return AgentParams(aero, drag, bounds)

def _resolved_vehicle(params):
    aero, drag, bounds = params.aero, params.drag, params.bounds
    return {
        'gamma': aero.vortex.gamma,
        'omega': aero.vortex.omega,
        'r_star': aero.vortex.r_star,
        'half_span': aero.vortex.half_span,
        'mu': aero.shape.mu,
        'sigma': aero.shape.sigma,
        'lift': drag.lift,
        'c1': drag.c1,
        'c2': drag.c2,
        'v_min': bounds.v_min,
        'v_max': bounds.v_max,
        'omega_max': bounds.omega_max,
    }

def _build_agent(section, index, vehicle, theta_g):
    values = _vehicle(section, vehicle)
    params = _agent_params(values, format_key(['agents', index]))

    agent_id = section.integer('id', index, lambda x: x >= 0, "must be non-negative")
    x = section.number('x', 0.0)
    y = section.number('y', 0.0)
    heading = section.number('heading', theta_g)
    speed = section.number('speed', params.bounds.clamp_speed(isolated_airspeed(params.drag)))
    if not params.bounds.v_min <= speed <= params.bounds.v_max:
        raise ConfigError(section.key('speed'), "must lie within [v_min, v_max]")

    section.ignore(*VEHICLE_KEYS)
    section.finish()
    return AgentSpec(agent_id, VehicleState([x, y], heading), params, speed)

def _formation_agents(section, vehicle, theta_g, seed):
    section.choice('layout', 'line_abreast', LAYOUTS)
    count = section.integer('count', None, lambda x: x >= 1, "must be at least 1")
    spacing = section.number('spacing', None, _positive, "must be positive")
    jitter = section.number('jitter', 0.0, lambda x: x >= 0, "must be non-negative")
    stagger = section.number('stagger', 0.0, lambda x: x >= 0, "must be non-negative")
    section.finish()

    params = _agent_params(_vehicle(_Section({}, ['vehicle']), vehicle), 'vehicle')
    speed = params.bounds.clamp_speed(isolated_airspeed(params.drag))

    # spanwise line across theta_g, centred on the origin; stagger sets
    # each rank back by its distance from the centre
    along = np.array([math.cos(theta_g), math.sin(theta_g)])
    across = np.array([-math.sin(theta_g), math.cos(theta_g)])
    noise = np.random.default_rng(seed).uniform(-jitter, jitter, size=(count, 2)) if jitter > 0 else np.zeros((count, 2))

    agents = []
    for i in range(count):
        offset = (i - 0.5 * (count - 1)) * spacing
        position = offset * across + (noise[i, 0] - stagger * abs(i - 0.5 * (count - 1))) * along + noise[i, 1] * across
        agents.append(AgentSpec(i, VehicleState(position, theta_g), params, speed))
    return agents

def _build(doc):
    if not isinstance(doc, dict):
        raise ConfigError('<document>', "expected a mapping at the top level")

    root = _Section(doc, [])
    name = root.text('name', 'scenario')

    simulation = root.section('simulation')
    dt = simulation.number('dt', 0.02, _positive, "must be positive")
    duration = simulation.number('duration', 20.0, lambda x: x > dt, "must exceed dt")
    seed = simulation.integer('seed', 0)
    threads = simulation.integer('threads', 1, lambda x: x >= 1, "must be at least 1")
    simulation.finish()

    ctl = root.section('controller')
    wake = root.section('wake')
    try:
        controller = ControllerConfig(
            rho=ctl.number('rho', 0.0, lambda x: x <= 0, "must not be positive"),
            epsilon=ctl.number('epsilon', 0.1, _positive, "must be positive"),
            theta_g=ctl.number('theta_g', 0.0),
            kappa=ctl.number('kappa', 0.25, lambda x: x >= 0, "must be non-negative"),
            omega_grid=ctl.integer('omega_grid', 41, lambda x: x >= 3 and x % 2 == 1, "must be odd and at least 3"),
            refine=ctl.integer('refine', 10, lambda x: x >= 1, "must be at least 1"),
            objective=ctl.choice('objective', 'drag', ('drag', 'power')),
            policy=ctl.choice('policy', 'anseroid', ('anseroid', 'greedy')),
            cutoff_gain=wake.number('cutoff_gain', 1e-9, _positive, "must be positive"),
            cutoff_spans=wake.number('cutoff_spans', 8.0, _positive, "must be positive"))
    except ValueError as e:
        raise ConfigError('controller', str(e))
    ctl.finish()
    wake.finish()

    vehicle_section = root.section('vehicle')
    vehicle = {}
    for key in VEHICLE_KEYS:
        if vehicle_section.has(key):
            vehicle[key] = vehicle_section.number(key, check=_positive, message="must be positive")
    vehicle_section.finish()

    if 'agents' in doc:
        root.ignore('agents')
        if not isinstance(doc['agents'], list) or not doc['agents']:
            raise ConfigError('agents', "expected a non-empty list")
        agents = [_build_agent(_Section(entry, ['agents', i]), i, vehicle, controller.theta_g)
                  for i, entry in enumerate(doc['agents'])]
        if root.has('formation'):
            raise ConfigError('formation', "cannot be combined with agents")
    elif 'formation' in doc:
        agents = _formation_agents(root.section('formation'), vehicle, controller.theta_g, seed)
    else:
        raise ConfigError('agents', "either agents or formation is required")

    ids = [a.id for a in agents]
    if len(set(ids)) != len(ids):
        raise ConfigError('agents', "agent ids must be unique")

    analysis = root.section('analysis')
    analysis_cfg = AnalysisConfig(
        stability_window=analysis.number('stability_window', 0.25 * duration,
                                         lambda x: 0 < x <= duration, "must lie in (0, duration]"),
        formation_time=analysis.number('formation_time', duration,
                                       lambda x: 0 <= x <= duration, "must lie in [0, duration]"),
        gap_window_spans=analysis.pair('gap_window_spans', [math.sqrt(2.0), 2.5]),
        score_threshold=analysis.number('score_threshold', 0.9, lambda x: 0 <= x <= 1, "must lie in [0, 1]"),
        snapshots=analysis.integer('snapshots', 6, lambda x: x >= 1, "must be at least 1"))
    analysis.finish()

    outputs = root.section('outputs')
    outputs_cfg = OutputConfig(outputs.text('directory', os.path.join('out', name)),
                               outputs.flag('plots', True))
    outputs.finish()
    root.finish()

    resolved = {
        'name': name,
        'simulation': {'dt': dt, 'duration': duration, 'seed': seed, 'threads': threads},
        'controller': {
            'rho': controller.rho, 'epsilon': controller.epsilon, 'theta_g': controller.theta_g,
            'kappa': controller.kappa, 'omega_grid': controller.omega_grid, 'refine': controller.refine,
            'objective': controller.objective, 'policy': controller.policy,
        },
        'vehicle': dict(vehicle),
        'wake': {'cutoff_gain': controller.cutoff_gain, 'cutoff_spans': controller.cutoff_spans},
        'agents': [dict(_resolved_vehicle(a.params), id=a.id, x=float(a.state.position[0]),
                        y=float(a.state.position[1]), heading=a.state.heading, speed=a.speed)
                   for a in agents],
        'analysis': {
            'stability_window': analysis_cfg.stability_window,
            'formation_time': analysis_cfg.formation_time,
            'gap_window_spans': analysis_cfg.gap_window_spans,
            'score_threshold': analysis_cfg.score_threshold,
            'snapshots': analysis_cfg.snapshots,
        },
        'outputs': {'directory': outputs_cfg.directory, 'plots': outputs_cfg.plots},
    }

    return ScenarioConfig(name, agents, controller, dt, duration, seed, threads,
                          analysis_cfg, outputs_cfg, resolved)

def read_document(path, overrides=()):
    """Raw scenario document from *path* with ``section.key=value`` overrides applied."""

    if not os.path.exists(path):
        raise ConfigError('<file>', "scenario file '{0}' does not exist".format(path))

    try:
        with codecs.open(path, 'r', 'utf-8') as config_file:
            doc = json.load(config_file)
    except ValueError as e:
        raise ConfigError('<file>', "'{0}' is not valid JSON: {1}".format(path, e))

    for text in overrides:
        try:
            key, value = parse_override(text)
            apply_override(doc, key, value)
        except (ValueError, KeyError, IndexError, TypeError, AttributeError) as e:
            raise ConfigError(text.split('=', 1)[0], "cannot apply override: {0}".format(e))

    return doc

def load_scenario(path, overrides=()):
    return _build(read_document(path, overrides))

def scenario_with(cfg, **changes):
    """Copy of *cfg* with resolved top-level sections patched, e.g. controller={'policy': 'greedy'}."""

    doc = cfg.to_dict()
    for section, values in changes.items():
        if isinstance(values, dict):
            doc.setdefault(section, {}).update(values)
        else:
            doc[section] = values

    doc['agents'] = [dict((k, v) for k, v in a.items() if k != 'r_star') for a in doc['agents']]
    return _build(doc)
