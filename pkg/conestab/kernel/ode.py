#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Adaptive Runge-Kutta-Fehlberg 4(5) integrator
#
import numpy as np

from conestab import log
from conestab.error import ConvergenceError

# Fehlberg tableau
NODES = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)

STAGES = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)

WEIGHTS_4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)

# 5th minus 4th order weights
ERROR_WEIGHTS = (1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55)


class Trajectory(object):
    """Recorded integration samples, times in integration order"""
    def __init__(self, times, states, rejected):
        self.times = np.asarray(times)
        self.states = np.asarray(states)
        self.rejected = rejected

    def __len__(self):
        return len(self.times)

    @property
    def final(self):
        return self.states[-1]


def rkf45_step(rhs, t, y, h):
    """One embedded step. Returns (4th order update, error estimate)"""
    k = []

    for c, row in zip(NODES, STAGES):
        stage = y + h * sum((a * kj for a, kj in zip(row, k)), np.zeros_like(y))
        k.append(np.asarray(rhs(t + c * h, stage), dtype=float))

    y_new = y + h * sum(b * kj for b, kj in zip(WEIGHTS_4, k))
    err = h * sum(e * kj for e, kj in zip(ERROR_WEIGHTS, k))

    return y_new, err


def integrate(rhs, y0, t_end, t0=0.0, tol=1e-8, h0=None, min_step=1e-12,
              max_steps=100000, record=None):
    """Integrate y' = rhs(t, y) from t0 to t_end with step-size control.

    The local error is held below `tol` per unit time; negative
    `t_end - t0` integrates backwards. When `record` lists times, the
    trajectory is forced through them so they appear among the samples.
    """
    y = np.array(y0, dtype=float)
    t = float(t0)

    span = float(t_end) - t
    direction = 1.0 if span >= 0 else -1.0

    times = [t]
    states = [y.copy()]

    if span == 0:
        return Trajectory(times, states, 0)

    stops = sorted(set(float(x) for x in (record or ()) if
                       direction * (x - t) > 0 and
                       direction * (t_end - x) > 0),
                   reverse=direction < 0)
    stops.append(float(t_end))

    h = abs(h0) if h0 else min(abs(span) / 16.0, 0.1)

    rejected = 0
    steps = 0

    for stop in stops:
        while direction * (stop - t) > 0:
            if steps >= max_steps:
                raise ConvergenceError(
                    'Step budget exhausted at t=%s' % t,
                    residual=float('nan'), iterations=steps)

            h = min(h, abs(stop - t))

            y_new, err = rkf45_step(rhs, t, y, direction * h)

            err_norm = float(np.max(np.abs(err))) if err.size else 0.0

            allowed = tol * h

            if err_norm <= allowed or h <= min_step:
                if err_norm > allowed:
                    raise ConvergenceError(
                        'Step size underflow at t=%s' % t,
                        residual=err_norm, iterations=steps)

                t = stop if abs(stop - t) <= h else t + direction * h
                y = y_new
                times.append(t)
                states.append(y.copy())
                steps += 1

            else:
                rejected += 1

            if err_norm == 0:
                factor = 4.0

            else:
                factor = min(4.0, max(0.1, 0.84 * (allowed / err_norm) ** 0.25))

            h = max(h * factor, min_step)

    log.debug('rkf45: %d steps, %d rejected, t=%s' % (steps, rejected, t))

    return Trajectory(times, states, rejected)
