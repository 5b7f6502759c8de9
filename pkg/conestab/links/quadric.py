#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link of the complex quadric cone z1^2 + z2^2 + z3^2 = 0
#
import numpy as np

from conestab.links import abstract

AXES = {'x': 0, 'y': 1, 'z': 2}


def rotation(axis, angle, order=0):
    """Rotation about a coordinate axis, or its `order`-th angle derivative"""
    i = AXES[axis]
    p, q = [j for j in range(3) if j != i]

    # derivatives of (cos, sin) cycle with period 4
    c = np.cos(angle + order * np.pi / 2)
    s = np.sin(angle + order * np.pi / 2)

    m = np.zeros((3, 3))
    m[p, p] = m[q, q] = c
    m[q, p] = s
    m[p, q] = -s

    if order == 0:
        m[i, i] = 1.0

    return m


class ComplexQuadricLink(abstract.AbstractLink):
    """{z in S^5 : z1^2 + z2^2 + z3^2 = 0}, a copy of SO(3).

    sigma = (R e1 + i R e2) / sqrt(2) with R a product of three axis
    rotations: ZYZ Euler angles on the main chart, XYX on the second one.
    Real coordinates are ordered (x1, x2, x3, y1, y2, y3).
    """
    TYPE = 'complex-quadric'

    ambient_dim = 6
    link_dim = 3

    EULER = {'zyz': 'zyz', 'xyx': 'xyx'}

    charts = tuple(
        abstract.Chart(name, [(0.0, 2 * np.pi), (0.0, np.pi),
                              (0.0, 2 * np.pi)], [True, False, True])
        for name in ('zyz', 'xyx'))

    def _factors(self, chart, coords, orders):
        axes = self.EULER[chart]
        r = np.eye(3)

        for axis, angle, order in zip(axes, coords, orders):
            r = r @ rotation(axis, angle, order)

        return r

    def _embed_rotation(self, r):
        return np.concatenate([r[:, 0], r[:, 1]]) / np.sqrt(2.0)

    def rotation_of(self, chart, coords):
        return self._factors(chart, coords, (0, 0, 0))

    def position(self, chart, coords):
        return self._embed_rotation(self._factors(chart, coords, (0, 0, 0)))

    def jacobian(self, chart, coords):
        return np.column_stack([
            self._embed_rotation(self._factors(chart, coords, orders))
            for orders in np.eye(3, dtype=int)])

    def hessian(self, chart, coords):
        h = np.empty((6, 3, 3))

        for a in range(3):
            for b in range(3):
                orders = [0, 0, 0]
                orders[a] += 1
                orders[b] += 1
                h[:, a, b] = self._embed_rotation(
                    self._factors(chart, coords, orders))

        return h

    def complex_position(self, point):
        return point.position[:3] + 1j * point.position[3:]
