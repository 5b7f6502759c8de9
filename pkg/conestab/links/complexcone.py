#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link of the cone f = 0 for a general homogeneous polynomial
#
import numpy as np
import scipy.linalg

from conestab.error import ConestabError
from conestab.error import UnsupportedLink
from conestab.links import abstract
from conestab.variations import polynomial


class ComplexConeLink(abstract.AbstractLink):
    """f^-1(0) in the unit sphere, known only through samples.

    Points come from Newton retraction of random seeds; there are no
    charts, so tangent frames come from the kernel of d(u, v).
    """
    TYPE = 'complex-cone'

    def __init__(self, f):
        if isinstance(f, dict):
            f = polynomial.HolomorphicPolynomial.from_json(f)

        if f.nvars < 2:
            raise ConestabError('Complex cone needs at least 2 variables')

        self.f = f
        self.ambient_dim = 2 * f.nvars
        self.link_dim = f.real_dim - 1

    def params(self):
        return {'f': self.f.to_json()}

    def __hash__(self):
        return hash(self.f)

    def position(self, chart, coords):
        raise UnsupportedLink('%s links have no charts' % self.TYPE)

    def tangent_basis(self, point):
        # the cone kernel contains the radial direction
        return scipy.linalg.null_space(np.vstack([
            self.f.real_jacobian(point.position), point.position]))

    def hessian(self, chart, coords):
        raise UnsupportedLink(
            'Second fundamental form of %s links needs a chart' % self.TYPE)

    def sample(self, count, rng, chart=None, max_tries=None):
        points = []
        tries = 0
        max_tries = max_tries or 20 * count

        while len(points) < count and tries < max_tries:
            tries += 1

            x = polynomial.retract_to_cone(
                self.f, rng.standard_normal(self.ambient_dim))

            if x is not None:
                points.append(abstract.LinkPoint(None, (), x))

        if len(points) < count:
            raise ConestabError(
                'Only %d of %d samples reached the cone' % (len(points), count))

        return points

    def volume(self, resolution=32):
        raise UnsupportedLink('%s links have no volume quadrature' % self.TYPE)
