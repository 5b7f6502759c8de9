#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Round spheres and products of spheres (Lawson links)
#
import numpy as np
from scipy.special import comb

from conestab.error import ConestabError
from conestab.kernel import quadrature
from conestab.links import abstract


def minimal_radii(k, l):
    """Radii of the minimal product S^k x S^l in S^(k+l+1).

    The principal curvatures -r2/r1 (k times) and r1/r2 (l times) cancel
    iff r1^2 = k / (k + l).
    """
    return np.sqrt(k / float(k + l)), np.sqrt(l / float(k + l))


def printed_radii(k, l):
    """sqrt((k+1)/(k+l+2)), sqrt((l+1)/(k+l+2)); minimal only for k = l"""
    return (np.sqrt((k + 1.0) / (k + l + 2.0)),
            np.sqrt((l + 1.0) / (k + l + 2.0)))


def hypersphere(angles, order=2):
    """Unit S^k in R^(k+1) in hyperspherical angles.

    x_i = sin(t_1) ... sin(t_(i-1)) cos(t_i), the last coordinate ending
    with sin(t_k). Returns position, first and (optionally) second
    derivatives with respect to the angles.
    """
    angles = np.asarray(angles, dtype=float)
    k = len(angles)

    s, c = np.sin(angles), np.cos(angles)

    # factor tables: value, first, second derivative of the factor of
    # angle a in coordinate i
    f0 = np.ones((k + 1, k))
    f1 = np.zeros((k + 1, k))
    f2 = np.zeros((k + 1, k))

    for i in range(k + 1):
        for a in range(min(i, k)):
            f0[i, a], f1[i, a], f2[i, a] = s[a], c[a], -s[a]

        if i < k:
            f0[i, i], f1[i, i], f2[i, i] = c[i], -s[i], -c[i]

    position = np.prod(f0, axis=1)

    jac = np.empty((k + 1, k))

    for a in range(k):
        f = f0.copy()
        f[:, a] = f1[:, a]
        jac[:, a] = np.prod(f, axis=1)

    if order < 2:
        return position, jac

    hess = np.empty((k + 1, k, k))

    for a in range(k):
        for b in range(a, k):
            f = f0.copy()

            if a == b:
                f[:, a] = f2[:, a]

            else:
                f[:, a] = f1[:, a]
                f[:, b] = f1[:, b]

            hess[:, a, b] = hess[:, b, a] = np.prod(f, axis=1)

    return position, jac, hess


def hypersphere_chart(k, name='angles'):
    bounds = [(0.0, np.pi)] * (k - 1) + [(0.0, 2 * np.pi)]
    return abstract.Chart(name, bounds, [False] * (k - 1) + [True])


def sphere_volume(k, order=32):
    """Volume of the unit S^k by factorized 1D Gauss quadrature"""
    total = 2 * np.pi

    for a in range(1, k):
        x, w = quadrature.gauss_legendre(0.0, np.pi, order)
        total *= np.dot(w, np.sin(x) ** (k - a))

    return float(total)


def sphere_laplace_spectrum(k, radius, count):
    """First `count` distinct Laplace eigenvalues of S^k of given radius.

    Returns (eigenvalue, multiplicity) pairs, j(j+k-1)/radius^2 with
    multiplicity C(j+k, k) - C(j+k-2, k).
    """
    spectrum = []

    for j in range(count):
        mult = comb(j + k, k, exact=True) - (
            comb(j + k - 2, k, exact=True) if j >= 2 else 0)
        spectrum.append((j * (j + k - 1) / radius ** 2, int(mult)))

    return spectrum


class _SphereFactorsMixIn(object):
    """Chart maps for a block of round-sphere factors.

    `factors` lists (dimension, radius, ambient offset); the second chart
    reverses the ambient coordinates of every factor.
    """
    factors = ()

    def _blocks(self, coords):
        start = 0

        for dim, radius, offset in self.factors:
            yield coords[start:start + dim], dim, radius, offset
            start += dim

    def _assemble(self, chart, coords, order):
        coords = np.asarray(coords, dtype=float)
        dim = len(coords)

        pos = np.zeros(self.ambient_dim)
        jac = np.zeros((self.ambient_dim, dim))
        hess = np.zeros((self.ambient_dim, dim, dim))

        start = 0

        for angles, k, radius, offset in self._blocks(coords):
            parts = hypersphere(angles, order)

            if chart == 'reversed':
                parts = [p[::-1] for p in parts]

            sl = slice(offset, offset + k + 1)
            cs = slice(start, start + k)

            pos[sl] = radius * parts[0]
            jac[sl, cs] = radius * parts[1]

            if order > 1:
                hess[sl, cs, cs] = radius * parts[2]

            start += k

        return pos, jac, hess

    def position(self, chart, coords):
        return self._assemble(chart, coords, 1)[0]

    def jacobian(self, chart, coords):
        return self._assemble(chart, coords, 1)[1]

    def hessian(self, chart, coords):
        return self._assemble(chart, coords, 2)[2]


def _product_charts(dims):
    charts = []

    for name in ('angles', 'reversed'):
        bounds = []
        periodic = []

        for k in dims:
            c = hypersphere_chart(k, name)
            bounds.extend(c.bounds)
            periodic.extend(c.periodic)

        charts.append(abstract.Chart(name, bounds, periodic))

    return tuple(charts)


class ProductOfSpheres(_SphereFactorsMixIn, abstract.AbstractLink):
    """S^k(r1) x S^l(r2) in S^(k+l+1); minimal radii by default"""
    TYPE = 'product-of-spheres'

    def __init__(self, k, l, r1=None, r2=None):
        k, l = int(k), int(l)

        if k < 1 or l < 1:
            raise ConestabError('Sphere factors need k, l >= 1')

        if (r1 is None) != (r2 is None):
            raise ConestabError('Give both radii or neither')

        if r1 is None:
            r1, r2 = minimal_radii(k, l)

        r1, r2 = float(r1), float(r2)

        if r1 <= 0 or r2 <= 0 or abs(r1 ** 2 + r2 ** 2 - 1.0) > 1e-12:
            raise ConestabError(
                'Radii must be positive with r1^2 + r2^2 = 1')

        self.k, self.l = k, l
        self.r1, self.r2 = r1, r2

        self.ambient_dim = k + l + 2
        self.link_dim = k + l
        self.factors = ((k, r1, 0), (l, r2, k + 1))
        self.charts = _product_charts((k, l))

    def params(self):
        return {'k': self.k, 'l': self.l, 'r1': self.r1, 'r2': self.r2}

    @property
    def is_minimal(self):
        r1, r2 = minimal_radii(self.k, self.l)
        return abs(self.r1 - r1) < 1e-12 and abs(self.r2 - r2) < 1e-12

    def unit_normal(self, point):
        """nu = (r2/r1 x, -r1/r2 y) for sigma = (x, y)"""
        x = point.position[:self.k + 1]
        y = point.position[self.k + 1:]

        return np.concatenate([self.r2 / self.r1 * x, -self.r1 / self.r2 * y])

    def volume(self, resolution=32):
        return (sphere_volume(self.k, resolution) * self.r1 ** self.k *
                sphere_volume(self.l, resolution) * self.r2 ** self.l)

    def laplace_spectrum(self, count):
        """Distinct eigenvalues j(j+k-1)/r1^2 + h(h+l-1)/r2^2 with
        product multiplicities, merged and sorted"""
        merged = {}

        for e1, m1 in sphere_laplace_spectrum(self.k, self.r1, count):
            for e2, m2 in sphere_laplace_spectrum(self.l, self.r2, count):
                key = round(e1 + e2, 10)
                value, mult = merged.get(key, (e1 + e2, 0))
                merged[key] = value, mult + m1 * m2

        return [merged[key] for key in sorted(merged)][:count]

    def sff_norm_sq(self):
        """|A|^2 = k r2^2 / r1^2 + l r1^2 / r2^2"""
        return (self.k * self.r2 ** 2 / self.r1 ** 2 +
                self.l * self.r1 ** 2 / self.r2 ** 2)


class RoundSphere(_SphereFactorsMixIn, abstract.AbstractLink):
    """Equatorial S^d in S^(m-1); the link of a flat cone"""
    TYPE = 'round-sphere'

    def __init__(self, d, m=None):
        d = int(d)
        m = d + 2 if m is None else int(m)

        if d < 1 or m < d + 2:
            raise ConestabError(
                'Equatorial S^%d does not fit in S^%d' % (d, m - 1))

        self.d = d
        self.ambient_dim = m
        self.link_dim = d
        self.factors = ((d, 1.0, 0),)
        self.charts = _product_charts((d,))

    def params(self):
        return {'d': self.d, 'm': self.ambient_dim}

    def volume(self, resolution=32):
        return sphere_volume(self.d, resolution)

    def laplace_spectrum(self, count):
        return sphere_laplace_spectrum(self.d, 1.0, count)

    def sff_norm_sq(self):
        return 0.0
