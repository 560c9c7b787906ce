#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Pointwise wake of a single fixed-wing vehicle: a pair of tip vortices with
rotational cores, composed spanwise and damped streamwise by a Gaussian.
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math

import numpy as np


class VortexParams:

    def __init__(self, gamma, omega, half_span):
        if gamma <= 0 or omega <= 0 or half_span <= 0:
            raise ValueError("gamma, omega and half_span must be positive")

        self.gamma = float(gamma)
        self.omega = float(omega)
        self.half_span = float(half_span)
        self.r_star = math.sqrt(self.gamma / (2.0 * math.pi * self.omega))

        if self.r_star >= self.half_span:
            raise ValueError("core radius {0:.4g} m is not smaller than the half span {1:.4g} m".format(
                self.r_star, self.half_span))

    @classmethod
    def from_core_radius(self, gamma, r_star, half_span):
        if r_star <= 0:
            raise ValueError("r_star must be positive")
        return self(gamma, gamma / (2.0 * math.pi * r_star ** 2), half_span)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            self.gamma == other.gamma and \
            self.omega == other.omega and \
            self.half_span == other.half_span

    def __repr__(self):
        return "VortexParams(gamma={0!r}, omega={1!r}, half_span={2!r})".format(
            self.gamma, self.omega, self.half_span)


class WakeShape:

    def __init__(self, mu, sigma):
        if mu <= 0 or sigma <= 0:
            raise ValueError("mu and sigma must be positive")

        self.mu = float(mu)
        self.sigma = float(sigma)

    @classmethod
    def for_half_span(self, half_span):
        return self(10.0 * half_span, 5.0 * half_span)

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            self.mu == other.mu and self.sigma == other.sigma

    def __repr__(self):
        return "WakeShape(mu={0!r}, sigma={1!r})".format(self.mu, self.sigma)


class AeroParams:
    """Everything a neighbor needs to know about a vehicle's wake."""

    def __init__(self, vortex, shape, lift):
        if lift <= 0:
            raise ValueError("lift must be positive")

        self.vortex = vortex
        self.shape = shape
        self.lift = float(lift)

    @property
    def half_span(self):
        return self.vortex.half_span

    def __eq__(self, other):
        return isinstance(other, type(self)) and \
            self.vortex == other.vortex and \
            self.shape == other.shape and \
            self.lift == other.lift

    def __repr__(self):
        return "AeroParams({0!r}, {1!r}, lift={2!r})".format(self.vortex, self.shape, self.lift)


def _result(value):
    return float(value) if np.ndim(value) == 0 else value

def _velocity(r, gamma, omega, r_star):
    core = np.abs(r) < r_star
    outer = np.where(core, r_star, r)
    return np.where(core, omega * r, gamma / (2.0 * np.pi * outer))

def _profile(y, gamma, omega, r_star, b):
    return _velocity(y - b, gamma, omega, r_star) - _velocity(y + b, gamma, omega, r_star)

def _gain(x, mu, sigma):
    # evaluated on the trailing distance d = -x
    return 2.0 * np.exp(-(-x - mu) ** 2 / (2.0 * sigma ** 2))

def vortex_velocity(r, vp):
    r = np.asarray(r, dtype=float)
    return _result(_velocity(r, vp.gamma, vp.omega, vp.r_star))

def spanwise_profile(y, vp):
    y = np.asarray(y, dtype=float)
    return _result(_profile(y, vp.gamma, vp.omega, vp.r_star, vp.half_span))

def streamwise_gain(x, ws):
    """Gain at relative streamwise position *x*; peaks at 2 for x = -mu."""

    x = np.asarray(x, dtype=float)
    return _result(_gain(x, ws.mu, ws.sigma))

def wake_axes(heading):
    heading = np.asarray(heading, dtype=float)
    c, s = np.cos(heading), np.sin(heading)
    return np.stack([c, s], axis=-1), np.stack([-s, c], axis=-1)

def wake_frame(pos_i, pose_j):
    """Coordinates of *pos_i* in the wake frame of the vehicle at *pose_j*."""

    along, across = wake_axes(pose_j.heading)
    s = np.asarray(pos_i, dtype=float) - pose_j.position
    return float(s @ along), float(s @ across)

def point_upwash(pos_i, pose_j, vp, ws):
    x, y = wake_frame(pos_i, pose_j)
    return spanwise_profile(y, vp) * streamwise_gain(x, ws)
