#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Wing-integrated wake effects: upwash force and rolling tendency of one
neighbor's wake on a wing, their sums over a neighborhood, and the cost to
flock E = kappa*|M| - W with its spatial gradient and time derivative.

Spanwise integrals are evaluated in closed form.  With k = gamma/(2 pi)
the vortex velocity has the antiderivatives

    U(r) = omega*r^2/2                    |r| <  r*
           k*(1/2 + ln(|r|/r*))           |r| >= r*

    V(r) = omega*r^3/3                    |r| <  r*      (V' = r*u)
           k*(r - sign(r)*2*r*/3)         |r| >= r*

from which the upwash and moment integrals over a wing of span 2b follow.
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import logging

import numpy as np

from anseroid.wake import _gain, _profile, _result, wake_axes

logger = logging.getLogger(__name__)

MOMENT_KINK = 1e-9


class FlockCostSample:

    def __init__(self, upwash_W=0.0, moment_M=0.0, kappa=0.0, grad_E=None, dE_dt=0.0):
        self.upwash_W = float(upwash_W)
        self.moment_M = float(moment_M)
        self.kappa = float(kappa)
        self.cost_E = self.kappa * abs(self.moment_M) - self.upwash_W
        self.grad_E = np.zeros(2) if grad_E is None else np.asarray(grad_E, dtype=float)
        self.dE_dt = float(dE_dt)

    @classmethod
    def isolated(self, kappa=0.0):
        return self(kappa=kappa)

    def lie_derivative(self, heading):
        """Directional derivative of E along a unit vector at *heading*."""
        return float(self.grad_E[0] * np.cos(heading) + self.grad_E[1] * np.sin(heading))

    def __repr__(self):
        return "FlockCostSample(W={0:.6g}, M={1:.6g}, E={2:.6g}, grad_E=[{3:.6g}, {4:.6g}], dE_dt={5:.6g})".format(
            self.upwash_W, self.moment_M, self.cost_E, self.grad_E[0], self.grad_E[1], self.dE_dt)


class NeighborSnapshot:

    def __init__(self, pose, speed, aero):
        self.pose = pose
        self.speed = float(speed)
        self.aero = aero


def _first_antiderivative(r, gamma, omega, r_star):
    a = np.abs(r)
    k = gamma / (2.0 * np.pi)
    return np.where(a < r_star,
                    0.5 * omega * r * r,
                    k * (0.5 + np.log(np.maximum(a, r_star) / r_star)))

def _moment_antiderivative(r, gamma, omega, r_star):
    a = np.abs(r)
    k = gamma / (2.0 * np.pi)
    return np.where(a < r_star,
                    omega * r ** 3 / 3.0,
                    k * (r - np.sign(r) * 2.0 * r_star / 3.0))

def _profile_integral(xi, gamma, omega, r_star, b):
    # antiderivative of f
    return _first_antiderivative(xi - b, gamma, omega, r_star) - \
        _first_antiderivative(xi + b, gamma, omega, r_star)

def _profile_moment(xi, gamma, omega, r_star, b):
    # antiderivative of xi*f(xi)
    return _moment_antiderivative(xi - b, gamma, omega, r_star) + \
        b * _first_antiderivative(xi - b, gamma, omega, r_star) - \
        _moment_antiderivative(xi + b, gamma, omega, r_star) + \
        b * _first_antiderivative(xi + b, gamma, omega, r_star)

def _upwash_integral(y, gamma, omega, r_star, b):
    return _profile_integral(y + b, gamma, omega, r_star, b) - \
        _profile_integral(y - b, gamma, omega, r_star, b)

def _moment_integral(y, gamma, omega, r_star, b):
    return _profile_moment(y + b, gamma, omega, r_star, b) - \
        _profile_moment(y - b, gamma, omega, r_star, b) - \
        y * _upwash_integral(y, gamma, omega, r_star, b)

def span_upwash_integral(y, vp):
    """Integral of the spanwise profile over a wing centred at *y*."""

    y = np.asarray(y, dtype=float)
    return _result(_upwash_integral(y, vp.gamma, vp.omega, vp.r_star, vp.half_span))

def span_moment_integral(y, vp):
    """First moment about the wing centre of the profile over a wing centred at *y*."""

    y = np.asarray(y, dtype=float)
    return _result(_moment_integral(y, vp.gamma, vp.omega, vp.r_star, vp.half_span))

def upwash_force(x, y, vp, ws):
    x = np.asarray(x, dtype=float)
    return _result(_gain(x, ws.mu, ws.sigma) * span_upwash_integral(y, vp))

def roll_moment(x, y, vp, ws):
    x = np.asarray(x, dtype=float)
    return _result(_gain(x, ws.mu, ws.sigma) * span_moment_integral(y, vp))


class _Neighborhood:
    """Neighbor snapshots stacked into arrays, seen from one position."""

    def __init__(self, self_pos, neighbors, cutoff_gain, cutoff_spans):
        self.size = len(neighbors)
        self.position = np.array([n.pose.position for n in neighbors], dtype=float).reshape(-1, 2)
        self.heading = np.array([n.pose.heading for n in neighbors], dtype=float)
        self.speed = np.array([n.speed for n in neighbors], dtype=float)

        vortex = [n.aero.vortex for n in neighbors]
        shape = [n.aero.shape for n in neighbors]
        self.gamma = np.array([v.gamma for v in vortex], dtype=float)
        self.omega = np.array([v.omega for v in vortex], dtype=float)
        self.r_star = np.array([v.r_star for v in vortex], dtype=float)
        self.b = np.array([v.half_span for v in vortex], dtype=float)
        self.mu = np.array([s.mu for s in shape], dtype=float)
        self.sigma = np.array([s.sigma for s in shape], dtype=float)

        self.along, self.across = wake_axes(self.heading)
        self.along = self.along.reshape(-1, 2)
        self.across = self.across.reshape(-1, 2)

        offset = np.asarray(self_pos, dtype=float) - self.position
        self.x = np.einsum('ij,ij->i', offset, self.along)
        self.y = np.einsum('ij,ij->i', offset, self.across)

        # a wake only reaches vehicles behind the wing that sheds it
        self.gain = _gain(self.x, self.mu, self.sigma)
        self.active = (self.x < 0.0) & (self.gain >= cutoff_gain) & (np.abs(self.y) <= cutoff_spans * self.b)

    def _params(self):
        return self.gamma, self.omega, self.r_star, self.b

    def fields(self):
        """Per-neighbor upwash and moment, zero where negligible."""

        w = self.gain * _upwash_integral(self.y, *self._params())
        m = self.gain * _moment_integral(self.y, *self._params())
        return np.where(self.active, w, 0.0), np.where(self.active, m, 0.0)

    def gradients(self):
        """Per-neighbor gradients of w and m w.r.t. the own position (world frame)."""

        params = self._params()
        y, b = self.y, self.b

        i_w = _upwash_integral(y, *params)
        i_m = _moment_integral(y, *params)
        f_hi = _profile(y + b, *params)
        f_lo = _profile(y - b, *params)
        di_w = f_hi - f_lo
        di_m = b * (f_hi + f_lo) - i_w

        dgain = self.gain * (-self.x - self.mu) / self.sigma ** 2
        active = self.active[:, None]

        grad_w = (dgain * i_w)[:, None] * self.along + (self.gain * di_w)[:, None] * self.across
        grad_m = (dgain * i_m)[:, None] * self.along + (self.gain * di_m)[:, None] * self.across
        return np.where(active, grad_w, 0.0), np.where(active, grad_m, 0.0)

    def velocities(self):
        return self.speed[:, None] * self.along


def aggregate_fields(self_pos, neighbors, cutoff_gain=1e-9, cutoff_spans=8.0):
    if not neighbors:
        return 0.0, 0.0

    w, m = _Neighborhood(self_pos, neighbors, cutoff_gain, cutoff_spans).fields()
    return float(np.sum(w)), float(np.sum(m))

def flock_cost(self_pos, neighbors, kappa, cutoff_gain=1e-9, cutoff_spans=8.0):
    """Sample E, its gradient and its frozen-velocity time derivative at *self_pos*.

    Neighbor speeds and headings are held constant over the step, so the
    time derivative is the sum over neighbors of the gradient of E with
    respect to the neighbor's position dotted with its velocity.  The
    neighbor-position gradient of a pairwise term is the negative of the
    own-position gradient.
    """

    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    if not neighbors:
        return FlockCostSample.isolated(kappa)

    hood = _Neighborhood(self_pos, neighbors, cutoff_gain, cutoff_spans)
    w, m = hood.fields()
    W, M = float(np.sum(w)), float(np.sum(m))

    sgn = 0.0 if abs(M) < MOMENT_KINK else float(np.sign(M))
    grad_w, grad_m = hood.gradients()
    grad_pairs = kappa * sgn * grad_m - grad_w

    grad_E = np.sum(grad_pairs, axis=0)
    dE_dt = -float(np.sum(grad_pairs * hood.velocities()))

    return FlockCostSample(W, M, kappa, grad_E, dE_dt)
