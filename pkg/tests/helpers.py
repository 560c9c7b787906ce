#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import codecs
import json
import os

import anseroid

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'scenarios')


def createRavenAero():
    vortex = anseroid.VortexParams(1.24, 70.0, 0.7)
    return anseroid.AeroParams(vortex, anseroid.WakeShape.for_half_span(0.7), 18.7)

def createRavenParams(v_min=6.0, v_max=15.0, omega_max=1.0):
    return anseroid.AgentParams(createRavenAero(),
                                anseroid.DragParams(5e-3, 95.0, 18.7),
                                anseroid.ControlBounds(v_min, v_max, omega_max))

def createLeader(x=0.0, y=0.0, heading=0.0, speed=11.0):
    return anseroid.NeighborSnapshot(anseroid.VehicleState([x, y], heading), speed, createRavenAero())

def createRecord(rows, dt=0.02):
    """Record of a single agent 0 from (x, y, v, E) tuples, one per tick."""

    record = anseroid.TrajectoryRecord([0], dt)
    for tick, (x, y, v, E) in enumerate(rows):
        record.append(tick * dt, [anseroid.AgentSample(0, x, y, 0.0, v, 0.0, 'constrained', 0.0, 0.0, E)])
    return record

def scenarioDocument(**sections):
    doc = {
        'name': 'test',
        'simulation': {'dt': 0.02, 'duration': 1.0},
        'vehicle': {
            'gamma': 1.24, 'omega': 70.0, 'half_span': 0.7,
            'lift': 18.7, 'c1': 5e-3, 'c2': 95.0,
            'v_min': 6.0, 'v_max': 15.0, 'omega_max': 1.0,
        },
        'agents': [{'id': 0, 'x': 0.0, 'y': 0.0}, {'id': 1, 'x': -7.0, 'y': 1.0}],
    }
    doc.update(sections)
    return doc

def writeScenario(directory, doc, name='scenario.json'):
    path = os.path.join(directory, name)
    with codecs.open(path, 'w', 'utf-8') as f:
        json.dump(doc, f)
    return path
