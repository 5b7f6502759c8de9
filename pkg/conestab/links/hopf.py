#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link of the graph cone of s |x| eta(x / |x|) over the Hopf map
#
import numpy as np

from conestab.error import ConestabError
from conestab.links import abstract
from conestab.links import spheres

LO_SLOPE = np.sqrt(5.0) / 2.0


def to_complex(x):
    """R^4 -> C^2 with z1 = x1 + i x4, z2 = -x3 + i x2"""
    x = np.asarray(x)
    return np.stack([x[..., 0] + 1j * x[..., 3],
                     -x[..., 2] + 1j * x[..., 1]], axis=-1)


def to_real(z):
    """Inverse of `to_complex`"""
    z = np.asarray(z)
    return np.stack([z[..., 0].real, z[..., 1].imag,
                     -z[..., 1].real, z[..., 0].imag], axis=-1)


def hopf_bilinear(x, y):
    """Symmetric bilinear form B with B(x, x) = eta(x).

    eta(z) = (2 conj(z1) z2, |z1|^2 - |z2|^2) in C x R = R^3.
    """
    z = to_complex(x)
    w = to_complex(y)

    first = np.conj(z[..., 0]) * w[..., 1] + np.conj(w[..., 0]) * z[..., 1]
    second = (np.conj(z[..., 0]) * w[..., 0]).real - (
        np.conj(z[..., 1]) * w[..., 1]).real

    return np.stack([first.real, first.imag, second], axis=-1)


def hopf_map(x):
    return hopf_bilinear(x, x)


def _hopf_chart_parts(coords):
    """x(a, b, c) for z1 = cos a e^ib, z2 = sin a e^ic with derivatives"""
    a, b, c = coords

    eb, ec = np.exp(1j * b), np.exp(1j * c)
    ca, sa = np.cos(a), np.sin(a)

    z = np.array([ca * eb, sa * ec])

    dz = np.array([
        [-sa * eb, 1j * ca * eb, 0],
        [ca * ec, 0, 1j * sa * ec]])

    ddz = np.zeros((2, 3, 3), dtype=complex)
    ddz[0, 0, 0] = ddz[0, 1, 1] = -ca * eb
    ddz[0, 0, 1] = ddz[0, 1, 0] = -1j * sa * eb
    ddz[1, 0, 0] = ddz[1, 2, 2] = -sa * ec
    ddz[1, 0, 2] = ddz[1, 2, 0] = 1j * ca * ec

    return (to_real(z), to_real(dz.T).T,
            to_real(np.moveaxis(ddz, 0, -1)).transpose(2, 0, 1))


class HopfGraphLink(abstract.AbstractLink):
    """Link in S^6 of the cone over the graph of s |x| eta(x / |x|).

    sigma(x) = (x, s eta(x)) / sqrt(1 + s^2) for x in S^3; the default
    slope sqrt(5)/2 gives the coassociative cone.
    """
    TYPE = 'hopf-graph'

    ambient_dim = 7
    link_dim = 3

    charts = (
        abstract.Chart('hopf', [(0.0, np.pi / 2), (0.0, 2 * np.pi),
                                (0.0, 2 * np.pi)], [False, True, True]),
        spheres.hypersphere_chart(3, 'angles'),
    )

    def __init__(self, slope=LO_SLOPE):
        slope = float(slope)

        if not slope > 0:
            raise ConestabError('Hopf graph slope must be positive')

        self.slope = slope
        self._norm = np.sqrt(1.0 + slope ** 2)

    def params(self):
        return {'slope': self.slope}

    def _sphere_parts(self, chart, coords):
        if chart == 'hopf':
            return _hopf_chart_parts(coords)

        return spheres.hypersphere(coords, 2)

    def point_of(self, x):
        """Link point over x in S^3"""
        x = np.asarray(x, dtype=float)

        if abs(np.linalg.norm(x) - 1.0) > 1e-12:
            raise ConestabError('Base point must lie on S^3')

        return np.concatenate([x, self.slope * hopf_map(x)]) / self._norm

    def position(self, chart, coords):
        x = self._sphere_parts(chart, coords)[0]
        return self.point_of(x)

    def jacobian(self, chart, coords):
        x, dx = self._sphere_parts(chart, coords)[:2]

        top = dx
        bottom = 2 * self.slope * np.stack(
            [hopf_bilinear(x, dx[:, a]) for a in range(3)], axis=-1)

        return np.vstack([top, bottom]) / self._norm

    def hessian(self, chart, coords):
        x, dx, ddx = self._sphere_parts(chart, coords)

        h = np.zeros((7, 3, 3))
        h[:4] = ddx

        for a in range(3):
            for b in range(3):
                h[4:, a, b] = 2 * self.slope * (
                    hopf_bilinear(dx[:, a], dx[:, b]) +
                    hopf_bilinear(x, ddx[:, a, b]))

        return h / self._norm
