#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link of the special Lagrangian T^2 cone in C^3
#
import numpy as np

from conestab.links import abstract

WEIGHTS = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])


class HarveyLawsonT2Link(abstract.AbstractLink):
    """(e^it1, e^it2, e^-i(t1+t2)) / sqrt(3) in S^5.

    The torus chart has no degeneracies, so a single periodic chart
    covers the link. Real coordinates are ordered (x1, x2, x3, y1, y2, y3).
    """
    TYPE = 'harvey-lawson-t2'

    ambient_dim = 6
    link_dim = 2

    charts = (abstract.Chart('angles', [(0.0, 2 * np.pi)] * 2, [True] * 2),)

    def _phases(self, coords):
        return WEIGHTS @ np.asarray(coords, dtype=float)

    def position(self, chart, coords):
        phi = self._phases(coords)
        return np.concatenate([np.cos(phi), np.sin(phi)]) / np.sqrt(3.0)

    def jacobian(self, chart, coords):
        phi = self._phases(coords)

        return np.vstack([-np.sin(phi)[:, None] * WEIGHTS,
                          np.cos(phi)[:, None] * WEIGHTS]) / np.sqrt(3.0)

    def hessian(self, chart, coords):
        phi = self._phases(coords)
        outer = np.einsum('ja,jb->jab', WEIGHTS, WEIGHTS)

        return np.concatenate([-np.cos(phi)[:, None, None] * outer,
                               -np.sin(phi)[:, None, None] * outer]) / np.sqrt(3.0)

    def volume(self, resolution=32):
        # induced metric [[2, 1], [1, 2]] / 3 is constant
        return float(4 * np.pi ** 2 * np.sqrt(3.0) / 3.0)
