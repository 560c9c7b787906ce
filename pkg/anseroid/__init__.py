#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
anseroid -- a flocking simulator in which every agent minimises its own
            locomotive cost subject to flying ever deeper into its
            neighbors' wakes, so that V and echelon formations emerge.
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import argparse
import codecs
import json
import logging
import os
import sys
import time

import numpy as np

from anseroid.utils import *
from anseroid.wake import *
from anseroid.aeroforces import *
from anseroid.drag import *
from anseroid.controller import *
from anseroid.sim import *
from anseroid.trajectory import *
from anseroid.scenarioconf import *
from anseroid.analysis import *
from anseroid.console import ProgressLine
from anseroid.verify import MODULES, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class RunManifest:
    """What was run, from which file, and how long each phase took."""

    def __init__(self, config_path, parameters, config_hash, output_dir):
        self.config_path = config_path
        self.parameters = parameters
        self.config_hash = config_hash
        self.output_dir = output_dir
        self.phases = {}
        self.tick_timing = {}

    def timed(self, phase, started):
        self.phases[phase] = time.perf_counter() - started

    def to_dict(self):
        return {
            'config': self.config_path,
            'content_hash': self.config_hash,
            'output': self.output_dir,
            'parameters': self.parameters,
            'phases': self.phases,
            'controller_tick': self.tick_timing,
        }

    def write_file(self, path):
        with codecs.open(path, 'w', 'utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write('\n')


def write_outputs(record, output_dir):
    """Write trajectory, summary and plot tables of *record* under *output_dir*."""

    cfg = record.config
    record.write_file(output_path(output_dir, 'trajectory.csv'))

    summary = summarize(record)
    with codecs.open(output_path(output_dir, 'summary.json'), 'w', 'utf-8') as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write('\n')

    if cfg.outputs.plots:
        aero = cfg.agents[0].params.aero
        write_table(output_path(output_dir, 'plots', 'cost_vs_time.csv'), cost_table(record))
        write_table(output_path(output_dir, 'plots', 'flock_shape.csv'),
                    flock_shape_table(record, cfg.analysis.snapshots))
        write_table(output_path(output_dir, 'plots', 'spanwise_profile.csv'),
                    spanwise_profile_table(aero.vortex))
        write_table(output_path(output_dir, 'plots', 'wake_field.csv'),
                    wake_field_grid(aero, cfg.controller.kappa))

    return summary

def cmd_run(config_path, overrides=(), threads=None, seed=None, output=None, progress=None):
    """Simulate the scenario at *config_path* and write every artifact; returns the exit code."""

    overrides = list(overrides)
    if threads is not None:
        overrides.append('simulation.threads={0}'.format(threads))
    if seed is not None:
        overrides.append('simulation.seed={0}'.format(seed))

    started = time.perf_counter()
    try:
        cfg = load_scenario(config_path, overrides)
        with open(config_path, 'rb') as config_file:
            config_hash = content_hash(config_file.read())
    except ConfigError as e:
        uprint("configuration error: {0}".format(e), file=sys.stderr)
        return EXIT_CONFIG

    output_dir = output or cfg.outputs.directory
    manifest = RunManifest(config_path, cfg.to_dict(), config_hash, output_dir)
    manifest.timed('load', started)

    started = time.perf_counter()
    try:
        record = run_scenario(cfg, progress)
    except NumericalError as e:
        uprint("numerical failure at {0}".format(e), file=sys.stderr)
        return EXIT_NUMERICAL
    manifest.timed('simulate', started)
    manifest.tick_timing = {'mean': float(np.mean(record.timings)), 'max': float(np.max(record.timings))}

    started = time.perf_counter()
    summary = write_outputs(record, output_dir)
    manifest.timed('analyze', started)
    manifest.write_file(output_path(output_dir, 'manifest.json'))

    logger.info("wrote %s", output_dir)
    uprint("{0}: {1} ticks, formation {2}, stable {3}; outputs in {4}".format(
        cfg.name, summary['ticks'], summary['formation']['shape'],
        'yes' if summary['stable'] else 'no', output_dir))
    return EXIT_OK

def cmd_derive(weight, span, cruise_speed, wake_speed, air_density, core_fraction):
    """Print the vehicle block for a scenario file; returns the exit code."""

    try:
        derived = derive_params(weight, span, cruise_speed, wake_speed, air_density, core_fraction)
    except ValueError as e:
        uprint("invalid vehicle: {0}".format(e), file=sys.stderr)
        return EXIT_CONFIG

    uprint(json.dumps({'vehicle': derived.to_dict()}, indent=2, sort_keys=True))
    uprint("profile drag at cruise: {0:.4g} N".format(derived.profile_drag))
    return EXIT_OK

def cmd_verify(only=None, seed=0):
    return run_checks(only, seed)

def main():
    parser = argparse.ArgumentParser(description="Simulate constraint-driven flocks in each other's wakes.")
    parser.add_argument('--verbose', action='store_true', help='log progress and controller decisions.')

    subparsers = parser.add_subparsers(dest='command', title='commands')

    run_command = subparsers.add_parser('run', help='simulate a scenario and write its outputs.')
    run_command.add_argument('config')
    run_command.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
                             help='override a scenario value, e.g. controller.kappa=0.5.')
    run_command.add_argument('--threads', type=int, help='worker threads per tick.')
    run_command.add_argument('--seed', type=int, help='seed for generated rosters.')
    run_command.add_argument('--output', help='output directory (default from the scenario).')

    derive_command = subparsers.add_parser('derive', help='derive vehicle constants from flight data.')
    for name, unit in (('weight', 'N'), ('span', 'm'), ('cruise', 'm/s'), ('wake_speed', 'm/s'),
                       ('density', 'kg/m^3'), ('core_fraction', 'core radius over half span')):
        derive_command.add_argument(name, type=float, help=unit)

    verify_command = subparsers.add_parser('verify', help='run the acceptance checks.')
    verify_command.add_argument('--only', choices=MODULES, help='run the checks of one module.')
    verify_command.add_argument('--seed', type=int, default=0)

    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if args.command == 'run':
        code = cmd_run(args.config, args.overrides, args.threads, args.seed, args.output,
                       ProgressLine(os.path.basename(args.config)))
    elif args.command == 'derive':
        code = cmd_derive(args.weight, args.span, args.cruise, args.wake_speed, args.density, args.core_fraction)
    elif args.command == 'verify':
        code = cmd_verify(args.only, args.seed)
    else:
        parser.print_help()
        code = EXIT_CONFIG

    sys.exit(code)

if __name__ == "__main__":
    main()
