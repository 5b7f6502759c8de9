#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Logarithmic cutoff of the Jacobi field W and the resulting decay of
# the weighted Rayleigh quotient
#
import numpy as np

from conestab import log
from conestab import utils
from conestab.error import ConestabError
from conestab.error import UnsupportedLink
from conestab.kernel import quadrature
from conestab.links import quadric
from conestab.variations import polynomial

SNAP = 1e-12

# link samples behind the sup |W|^2 estimate
K_SAMPLES = 10000


def cutoff(N, r):
    """phi and phi' of the logarithmic cutoff.

    phi = 0 below e^-2N, 2 + log r / N up to e^-N, 1 up to e^N,
    2 - log r / N up to e^2N and 0 beyond.
    """
    if not N > 0:
        raise ConestabError('Cutoff scale must be positive, got %s' % N)

    r = np.asarray(r, dtype=float)

    if np.any(r <= 0):
        raise ConestabError('Cutoff radius must be positive')

    s = np.log(r) / N
    a = np.abs(s)

    phi = np.where(a <= 1, 1.0, np.where(a < 2 - SNAP, 2 - a, 0.0))
    dphi = np.where((a > 1) & (a < 2 - SNAP), -np.sign(s) / (N * r), 0.0)

    if phi.ndim == 0:
        return float(phi), float(dphi)

    return phi, dphi


def cutoff_breakpoints(N):
    return tuple(np.exp(k * N) for k in (-2, -1, 1, 2))


def link_of(f):
    """Charted link of f = 0 for link quadrature"""
    if f == polynomial.HolomorphicPolynomial.quadric(3):
        return quadric.ComplexQuadricLink()

    raise UnsupportedLink(
        'No charted link for %r; only sampling is available' % (f,))


class LinkIntegrals(object):
    """Link quadrature of |W|^2 for the cone f = 0.

    `node_K` is the largest |W|^2 over the quadrature nodes and
    `sampled_K` the sup estimate of `polynomial.sup_constant_K` over
    `samples` random link points. `K` is the larger of the two, so the
    bound int |W|^2 <= K H(Sigma) holds for the discrete sums as well.
    With `samples` = 0 only the nodes are used.
    """
    def __init__(self, f, link=None, resolution=8, samples=K_SAMPLES,
                 rng=None):
        self.f = f
        self.link = link or link_of(f)

        if samples < 0:
            raise ConestabError(
                'Sample count must be non-negative, got %s' % samples)

        field = polynomial.JacobiFieldW(f)
        chart = self.link.get_chart()

        coords, weights = chart.rule(resolution)

        volume = w_sq = 0.0
        node_K = 0.0

        for c, w in zip(coords, weights):
            jac = self.link.jacobian(chart.name, c)
            area = w * np.sqrt(np.linalg.det(jac.T @ jac))

            value = field.norm_sq(self.link.position(chart.name, c))

            volume += area
            w_sq += area * value
            node_K = max(node_K, value)

        self.volume = float(volume)
        self.w_sq = float(w_sq)
        self.node_K = float(node_K)
        self.sampled_K = None

        if samples:
            self.sampled_K = float(polynomial.sup_constant_K(
                f, int(samples), rng or utils.make_rng(0)))

            log.debug('LinkIntegrals: node K %r, sampled K %r' % (
                self.node_K, self.sampled_K))

        self.K = max(self.node_K, self.sampled_K or 0.0)

        # |W(r sigma)|^2 r^(n-1) = r^p |W(sigma)|^2
        self.power = 2 * (1 - f.degree) + f.real_dim - 1

    def radial(self, N, integrand, pieces=16):
        """int over [e^-2N, e^2N] of integrand(r) r^p dr, in t = log r"""
        t, w = quadrature.composite_gauss(
            -2.0 * N, 2.0 * N, pieces,
            breakpoints=[-N, N])
        r = np.exp(t)

        return float(np.sum(w * integrand(r) * r ** (self.power + 1)))


def second_variation_cutoff(f, N, integrals=None, resolution=8,
                            samples=K_SAMPLES, rng=None):
    """Q(phi W, phi W) = int |grad phi|^2 |W|^2 by coarea quadrature.

    Returns (value, bound) where bound = (2K / N) H^(n-1)(Sigma).
    """
    integrals = integrals or LinkIntegrals(
        f, resolution=resolution, samples=samples, rng=rng)

    radial = integrals.radial(N, lambda r: cutoff(N, r)[1] ** 2)
    value = radial * integrals.w_sq

    bound = 2 * integrals.K / N * integrals.volume

    log.debug('second_variation_cutoff: N %s -> %r (bound %r)' % (
        N, value, bound))

    return value, bound


def weighted_norm(f, N, integrals):
    """int phi^2 |W|^2 r^-2 dH^n"""
    radial = integrals.radial(N, lambda r: cutoff(N, r)[0] ** 2 / r ** 2)
    return radial * integrals.w_sq


def jacobi_cutoff_field(patch, f, N):
    """phi(r) W(r sigma) as a normal field on a cone patch"""
    field = polynomial.JacobiFieldW(f)

    def evaluate(r, coords):
        phi = cutoff(N, r)[0]

        if not phi:
            return np.zeros(patch.spec.ambient_dim)

        return phi * field(patch.position(r, coords))

    return evaluate


class VariationReport(object):
    def __init__(self, f, rows, K, link_volume, node_K=None, sampled_K=None):
        self.f = f
        self.rows = rows
        self.K = K
        self.link_volume = link_volume
        self.node_K = node_K
        self.sampled_K = sampled_K

    @property
    def ratios(self):
        """rayleigh(N_i+1) / rayleigh(N_i)"""
        return [b['rayleigh'] / a['rayleigh']
                for a, b in zip(self.rows[:-1], self.rows[1:])]

    @property
    def is_decreasing(self):
        return all(b['rayleigh'] < a['rayleigh']
                   for a, b in zip(self.rows[:-1], self.rows[1:]))

    def to_json(self):
        return {'f': self.f.to_json(),
                'K': self.K,
                'node_K': self.node_K,
                'sampled_K': self.sampled_K,
                'link_volume': self.link_volume,
                'rows': self.rows,
                'ratios': self.ratios}


def rayleigh_decay(f, N_values, resolution=8, samples=K_SAMPLES, rng=None):
    N_values = [float(N) for N in N_values]

    if not N_values or any(
            b <= a for a, b in zip(N_values[:-1], N_values[1:])):
        raise ConestabError('Cutoff scales must be increasing')

    integrals = LinkIntegrals(
        f, resolution=resolution, samples=samples, rng=rng)

    rows = []

    for N in N_values:
        value, bound = second_variation_cutoff(f, N, integrals)
        norm = weighted_norm(f, N, integrals)

        rows.append({'N': N, 'Q': value, 'bound': bound,
                     'weighted_norm': norm, 'rayleigh': value / norm})

    report = VariationReport(f, rows, integrals.K, integrals.volume,
                             node_K=integrals.node_K,
                             sampled_K=integrals.sampled_K)

    log.info('rayleigh_decay: %r -> %s' % (f, ', '.join(
        '%g:%.6g' % (row['N'], row['rayleigh']) for row in rows)))

    return report
