#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math

import numpy as np

from anseroid.wake import VortexParams

OBJECTIVES = ('drag', 'power')
ROOT_TOLERANCE = 1e-12


class DragParams:

    def __init__(self, c1, c2, lift):
        if c1 <= 0 or c2 <= 0 or lift <= 0:
            raise ValueError("c1, c2 and lift must be positive")

        self.c1 = float(c1)
        self.c2 = float(c2)
        self.lift = float(lift)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            self.c1 == other.c1 and self.c2 == other.c2 and self.lift == other.lift

    def __repr__(self):
        return "DragParams(c1={0!r}, c2={1!r}, lift={2!r})".format(self.c1, self.c2, self.lift)


class DerivedParams:
    """Result of derive_params; unpacks as (VortexParams, DragParams)."""

    def __init__(self, vortex, drag, cruise_speed):
        self.vortex = vortex
        self.drag = drag
        self.profile_drag = drag.c1 * cruise_speed ** 2

    def __iter__(self):
        return iter((self.vortex, self.drag))

    def to_dict(self):
        return {
            'gamma': self.vortex.gamma,
            'omega': self.vortex.omega,
            'r_star': self.vortex.r_star,
            'half_span': self.vortex.half_span,
            'lift': self.drag.lift,
            'c1': self.drag.c1,
            'c2': self.drag.c2,
        }


def drag_force(v, W, dp):
    if v <= 0:
        raise ValueError("airspeed must be positive, got {0}".format(v))
    return dp.c1 * v * v + dp.c2 / (v * v) - dp.lift / v * W

def locomotive_power(v, W, dp):
    return drag_force(v, W, dp) * v

def isolated_airspeed(dp):
    return (dp.c2 / dp.c1) ** 0.25

def airspeed_quartic(v, W, dp):
    return v ** 4 + dp.lift / (2.0 * dp.c1) * W * v - dp.c2 / dp.c1

def quartic_roots(W, dp):
    return np.roots([1.0, 0.0, 0.0, dp.lift / (2.0 * dp.c1) * W, -dp.c2 / dp.c1])

def count_real_roots(roots, rel_tol=1e-7):
    scale = max(1.0, float(np.max(np.abs(roots))))
    return int(np.sum(np.abs(np.imag(roots)) <= rel_tol * scale))

def optimal_airspeed(W, dp, objective='drag'):
    """Positive airspeed minimising drag (or power) at upwash *W*.

    The drag minimiser is the single positive root of
    v^4 + L/(2 C1) W v - C2/C1, found by bisection.  Power is drag times v,
    whose W term is speed independent, so its minimiser (C2/(3 C1))^(1/4)
    does not move with the upwash.
    """

    if objective == 'power':
        return (dp.c2 / (3.0 * dp.c1)) ** 0.25
    elif objective != 'drag':
        raise ValueError("unknown objective '{0}'".format(objective))

    if W == 0:
        return isolated_airspeed(dp)

    lo = 0.0
    hi = 2.0 * max(isolated_airspeed(dp), (dp.lift * abs(W) / (2.0 * dp.c1)) ** (1.0 / 3.0))

    while hi - lo > ROOT_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if airspeed_quartic(mid, W, dp) < 0:
            lo = mid
        else:
            hi = mid

    return 0.5 * (lo + hi)

def derive_params(weight, span, cruise_speed, wake_speed, air_density, core_fraction):
    """Vortex and drag constants of a vehicle in level cruise (lift = weight).

    Circulation follows Kutta-Joukowski, the core radius is *core_fraction*
    of the half span, and the profile coefficient is chosen so that the
    isolated drag-minimising airspeed equals *cruise_speed*.
    """

    for name, value in (('weight', weight), ('span', span), ('cruise_speed', cruise_speed),
                        ('wake_speed', wake_speed), ('air_density', air_density)):
        if value <= 0:
            raise ValueError("{0} must be positive".format(name))
    if not 0 < core_fraction < 0.2:
        raise ValueError("core_fraction must lie in (0, 0.2)")

    b = 0.5 * span
    gamma = weight / (span * air_density * wake_speed)
    r_star = core_fraction * b
    c2 = weight ** 2 / (2.0 * air_density * math.pi * b ** 2)
    c1 = c2 / cruise_speed ** 4

    vortex = VortexParams.from_core_radius(gamma, r_star, b)
    return DerivedParams(vortex, DragParams(c1, c2, weight), cruise_speed)
