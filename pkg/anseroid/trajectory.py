#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import codecs
import csv
import io

import numpy as np

COLUMNS = ('t', 'id', 'x', 'y', 'theta', 'v', 'omega', 'mode', 'W', 'M', 'E')


def format_float(value):
    return '%.17g' % value


class AgentSample:
    """One agent at one tick: state, the control applied from it, and the wake it sees."""

    def __init__(self, id, x, y, theta, v, omega, mode, upwash_W, moment_M, cost_E,
                 gate_feasible=None, v_star=None):
        self.id = id
        self.x = float(x)
        self.y = float(y)
        self.theta = float(theta)
        self.v = float(v)
        self.omega = float(omega)
        self.mode = str(mode)
        self.upwash_W = float(upwash_W)
        self.moment_M = float(moment_M)
        self.cost_E = float(cost_E)
        self.gate_feasible = gate_feasible
        self.v_star = v_star

    @classmethod
    def from_decision(self, id, state, decision):
        return self(id, state.position[0], state.position[1], state.heading,
                    decision.control.v, decision.control.omega, decision.mode,
                    decision.cost.upwash_W, decision.cost.moment_M, decision.cost.cost_E,
                    decision.gate.feasible, decision.v_star)

    def row(self, t):
        return [format_float(t), str(self.id), format_float(self.x), format_float(self.y),
                format_float(self.theta), format_float(self.v), format_float(self.omega),
                self.mode, format_float(self.upwash_W), format_float(self.moment_M),
                format_float(self.cost_E)]


class TrajectoryRecord:
    """Append-only per-tick, per-agent history of a run."""

    def __init__(self, agent_ids, dt, config=None):
        self.agent_ids = list(agent_ids)
        self.dt = float(dt)
        self.config = config
        self.times = []
        self.frames = []
        self.timings = []

    def append(self, t, samples):
        if [s.id for s in samples] != self.agent_ids:
            raise ValueError("samples must follow the agent order {0}".format(self.agent_ids))
        self.times.append(float(t))
        self.frames.append(list(samples))

    def __len__(self):
        return len(self.frames)

    def tick_at(self, t):
        """Index of the tick closest to time *t*."""

        if not self.frames:
            raise IndexError("empty record")
        return int(np.argmin(np.abs(np.asarray(self.times) - t)))

    def column(self, name):
        """Array of attribute *name*, shape (ticks, agents)."""
        return np.array([[getattr(s, name) for s in frame] for frame in self.frames])

    def positions(self):
        return np.stack([self.column('x'), self.column('y')], axis=-1)

    def agent_index(self, id):
        return self.agent_ids.index(id)

    @classmethod
    def parse_text(self, text, config=None):
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or tuple(header) != COLUMNS:
            raise ValueError("trajectory header must be {0}".format(','.join(COLUMNS)))

        times, frames = [], []
        for row in reader:
            if not row:
                continue
            t = float(row[0])
            if not times or t != times[-1]:
                times.append(t)
                frames.append([])
            frames[-1].append(AgentSample(int(row[1]), *[float(x) for x in row[2:7]], row[7],
                                          *[float(x) for x in row[8:11]]))

        if not frames:
            raise ValueError("trajectory has no rows")

        dt = times[1] - times[0] if len(times) > 1 else (config.dt if config else 0.0)
        record = self([s.id for s in frames[0]], dt, config)
        for t, frame in zip(times, frames):
            record.append(t, frame)
        return record

    @classmethod
    def parse_file(self, path, config=None):
        with codecs.open(path, 'r', 'utf-8') as f:
            return self.parse_text(f.read(), config)

    def write_file(self, path):
        with codecs.open(path, 'w', 'utf-8') as f:
            f.write(str(self))

    def __str__(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(COLUMNS)
        for t, frame in zip(self.times, self.frames):
            for sample in frame:
                writer.writerow(sample.row(t))
        return out.getvalue()


def _cell(value):
    if isinstance(value, float):
        return format_float(value)
    return str(value)

def write_table(path, rows):
    """Write *rows* (header first) as CSV, floats at full precision."""

    with codecs.open(path, 'w', 'utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        for row in rows:
            writer.writerow([_cell(x) for x in row])
