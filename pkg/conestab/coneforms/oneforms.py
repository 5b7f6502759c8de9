#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Homogeneous 1-forms on cones over Fourier links and the product-grid
# oracle for exterior calculus on (r x T^d)
#
import itertools

import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.error import HypothesisViolation
from conestab.kernel import forms
from conestab.kernel import quadrature

NONE_EXISTS = 'NoneExists'
WITNESS_FOUND = 'WitnessFound'

EIGEN_TOL = 1e-10


class HomogeneousOneForm(object):
    """alpha = r^lam eta dr + r^(lam+1) omega.

    `eta` is a function (0-form coefficients) and `omega` a 1-form on the
    link, both as FourierTorus coefficient arrays.
    """
    def __init__(self, link, lam, eta=None, omega=None):
        self.link = link
        self.lam = float(lam)
        self.eta = link.zeros(0) if eta is None else np.asarray(eta, dtype=complex)
        self.omega = link.zeros(1) if omega is None else np.asarray(
            omega, dtype=complex)

        if self.eta.shape != (link.modes, 1) or self.omega.shape != (
                link.modes, link.d):
            raise ConestabError('Coefficient arrays do not match the link')

    def on_grid(self, grid):
        """Coordinate components on a product grid, keyed by index tuples"""
        r = grid.radial_factor()

        values = {(0,): r ** self.lam * grid.link_values(self.eta)[..., 0]}

        omega = grid.link_values(self.omega)

        for i in range(self.link.d):
            values[(i + 1,)] = r ** (self.lam + 1) * omega[..., i]

        return values


def fhn_residuals(alpha, n=None):
    """Norms of d eta - (lam+1) omega, d omega and
    delta omega - (lam+n-1) eta on the link"""
    link = alpha.link
    n = link.d + 1 if n is None else n

    res1 = link.norm(link.exterior_derivative(alpha.eta, 0) -
                     (alpha.lam + 1) * alpha.omega)

    if link.d > 1:
        res2 = link.norm(link.exterior_derivative(alpha.omega, 1))

    else:
        res2 = 0.0

    res3 = link.norm(link.codifferential(alpha.omega, 1) -
                     (alpha.lam + n - 1) * alpha.eta)

    return res1, res2, res3


def hodge_eigenvalue_of_homogeneity(lam, n):
    """(lam + 1)(lam + n - 1)"""
    return (lam + 1) * (lam + n - 1)


class ObstructionReport(object):
    def __init__(self, link, n, lam, verdict, witness_modes, required,
                 min_hodge_eigenvalue, witness=None):
        self.link = link
        self.n = n
        self.lam = lam
        self.verdict = verdict
        self.witness_modes = witness_modes
        self.required = required
        self.min_hodge_eigenvalue = min_hodge_eigenvalue
        self.witness = witness

    def to_json(self):
        return {'link': self.link.to_json(),
                'n': self.n,
                'lambda': self.lam,
                'verdict': self.verdict,
                'witness_modes': self.witness_modes,
                'required_eigenvalue': self.required,
                'min_hodge_eigenvalue': self.min_hodge_eigenvalue}


def critical_oneform_obstruction(link, n):
    """Closed and co-closed 1-forms of homogeneity (2-n)/2 on the cone.

    For lam != -1 the system reduces to Delta eta = (lam+1)(lam+n-1) eta
    on functions with omega = d eta / (lam+1); for lam = -1 (n = 4) eta
    vanishes and omega ranges over harmonic 1-forms.
    """
    if n < 4:
        raise ConestabError('Obstruction covers cones of dimension n >= 4')

    lam = (2.0 - n) / 2
    required = hodge_eigenvalue_of_homogeneity(lam, n)

    min_eig = float(link.hodge_spectrum(1)[0])

    if lam == -1:
        # harmonic 1-forms of the link solve the system only when the
        # link is the full cross-section of the cone
        if link.d != n - 1:
            raise HypothesisViolation(
                'A %d-dimensional cone needs a %d-dimensional link, '
                'got %r' % (n, n - 1, link))

        harmonic = link.harmonic_forms(1)
        modes = [[0] * link.d for _ in harmonic]
        witness = HomogeneousOneForm(link, lam, omega=harmonic[0]) \
            if harmonic else None

    else:
        # eigenvalues of Delta_0 are |k|^2
        eig0 = np.sum(link.wavevectors ** 2, axis=1)
        hits = np.nonzero(np.abs(eig0 - required) <= EIGEN_TOL)[0]

        modes = [link.wavevectors[m].tolist() for m in hits]
        witness = None

        if len(hits):
            eta = link.zeros(0)
            eta[hits[0], 0] = 1.0
            witness = HomogeneousOneForm(
                link, lam, eta, link.exterior_derivative(eta, 0) / (lam + 1))

    verdict = WITNESS_FOUND if modes else NONE_EXISTS

    log.info('critical_oneform_obstruction: %r n=%d lam=%g required %g, '
             'min Hodge %g -> %s' % (link, n, lam, required, min_eig, verdict))

    return ObstructionReport(link, n, lam, verdict, modes, required, min_eig,
                             witness)


class ProductGrid(object):
    """(r x T^d) with metric dr^2 + r^2 g_flat.

    Chebyshev points in r on [a, b], `count` uniform points per angle.
    Fields are arrays of shape (n_r,) + (count,) * d; coordinate 0 is r.
    """
    def __init__(self, link, r_range=(0.5, 2.0), n_r=24, count=None):
        self.link = link
        self.dim = link.d + 1
        self.count = count or 2 * link.cutoff + 2

        self.D, self.r = quadrature.cheb(n_r, r_range)

        k = np.fft.fftfreq(self.count, 1.0 / self.count)
        self.k = k

    @property
    def shape(self):
        return (len(self.r),) + (self.count,) * self.link.d

    def radial_factor(self):
        return self.r.reshape((-1,) + (1,) * self.link.d)

    def link_values(self, coeffs):
        """Link form values broadcast against the radial axis"""
        return self.link.synthesize_grid(coeffs, self.count)[None]

    def partial(self, field, axis):
        if axis == 0:
            return np.tensordot(self.D, field, axes=(1, 0))

        shape = [1] * field.ndim
        shape[axis] = self.count

        spectrum = np.fft.fft(field, axis=axis)

        return np.fft.ifft(1j * self.k.reshape(shape) * spectrum, axis=axis).real

    def angular_degree(self, indices):
        return sum(1 for i in indices if i > 0)


def _zero(grid):
    return np.zeros(grid.shape)


def grid_d(grid, alpha, p):
    """Exterior derivative of a coordinate-component p-form"""
    result = {}

    for idx, j, target, sign in forms.d_table(grid.dim, p):
        value = alpha.get(idx)

        if value is None:
            continue

        result[target] = result.get(target, _zero(grid)) + sign * grid.partial(
            value, j)

    return result


def grid_star(grid, alpha, p, orientation=1):
    """Hodge star for dr^2 + r^2 g_flat, coordinate components"""
    r = grid.radial_factor()
    result = {}

    for idx, comp, sign in forms.star_table(grid.dim, p):
        value = alpha.get(idx)

        if value is None:
            continue

        power = grid.angular_degree(comp) - grid.angular_degree(idx)
        result[comp] = orientation * sign * r ** power * value

    return result


def grid_codifferential(grid, alpha, p):
    """delta = (-1)^(n(p+1)+1) * d * on p-forms"""
    n = grid.dim
    sign = (-1) ** (n * (p + 1) + 1)

    inner = grid_d(grid, grid_star(grid, alpha, p), n - p)
    result = grid_star(grid, inner, n - p + 1)

    return dict((k, sign * v) for k, v in result.items())


def grid_max(alpha):
    return max([float(np.max(np.abs(v))) for v in alpha.values()] or [0.0])


def grid_difference(a, b):
    keys = set(a) | set(b)

    return max([float(np.max(np.abs(a.get(k, 0.0) - b.get(k, 0.0))))
                for k in keys] or [0.0])


def cone_level_residuals(alpha, grid):
    """(max |d alpha|, max |delta alpha|) of the assembled cone form"""
    values = alpha.on_grid(grid)

    return (grid_max(grid_d(grid, values, 1)),
            grid_max(grid_codifferential(grid, values, 1)))


def fhn_prediction(alpha, grid, n=None):
    """d alpha and delta alpha assembled from the link identities:
    d alpha = r^lam dr ^ (-d eta + (lam+1) omega) + r^(lam+1) d omega,
    delta alpha = r^(lam-1) (delta omega - (lam+n-1) eta)."""
    link = alpha.link
    n = link.d + 1 if n is None else n
    lam = alpha.lam
    r = grid.radial_factor()

    radial = grid.link_values(
        (lam + 1) * alpha.omega - link.exterior_derivative(alpha.eta, 0))

    d_alpha = {}

    for i in range(link.d):
        d_alpha[(0, i + 1)] = r ** lam * radial[..., i]

    if link.d > 1:
        d_omega = grid.link_values(link.exterior_derivative(alpha.omega, 1))

        for c, (i, j) in enumerate(itertools.combinations(range(link.d), 2)):
            d_alpha[(i + 1, j + 1)] = r ** (lam + 1) * d_omega[..., c]

    delta = grid.link_values(
        link.codifferential(alpha.omega, 1) - (lam + n - 1) * alpha.eta)

    return d_alpha, {(): r ** (lam - 1) * delta[..., 0]}
