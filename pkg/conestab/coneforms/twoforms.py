#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Homogeneity -1 two-forms on 4-dimensional cones over T^3, the curl
# spectrum of the link and the sign ledger of the Hodge Laplacian chain
#
import itertools

import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.coneforms import fourier

VALID_TOL = 1e-8
PSD_TOL = 1e-10


def _require_3d(link):
    if link.d != 3:
        raise ConestabError('Two-form reduction needs a 3-dimensional link')


class HomogeneousTwoForm(object):
    """alpha = dr ^ eta + r omega with a link 1-form eta and 2-form omega"""
    def __init__(self, link, eta=None, omega=None):
        _require_3d(link)

        self.link = link
        self.eta = link.zeros(1) if eta is None else np.asarray(eta, dtype=complex)
        self.omega = link.zeros(2) if omega is None else np.asarray(
            omega, dtype=complex)

        if self.eta.shape != (link.modes, 3) or self.omega.shape != (
                link.modes, 3):
            raise ConestabError('Coefficient arrays do not match the link')

    def on_grid(self, grid):
        r = grid.radial_factor()

        eta = grid.link_values(self.eta)
        omega = grid.link_values(self.omega)

        values = {}

        for i in range(3):
            values[(0, i + 1)] = eta[..., i] * np.ones_like(r)

        for c, (i, j) in enumerate(itertools.combinations(range(3), 2)):
            values[(i + 1, j + 1)] = r * omega[..., c]

        return values


class TwoFormDerivative(object):
    """d alpha = dr ^ (omega - d eta) + r d omega"""
    def __init__(self, d_eta, omega, d_omega):
        self.d_eta = d_eta
        self.omega = omega
        self.d_omega = d_omega

    @property
    def radial(self):
        return self.omega - self.d_eta

    def on_grid(self, link, grid):
        r = grid.radial_factor()

        radial = grid.link_values(self.radial)
        d_omega = grid.link_values(self.d_omega)

        values = {}

        for c, (i, j) in enumerate(itertools.combinations(range(3), 2)):
            values[(0, i + 1, j + 1)] = radial[..., c] * np.ones_like(r)

        values[(1, 2, 3)] = r * d_omega[..., 0]

        return values


def cone_d_2form(alpha):
    link = alpha.link

    return TwoFormDerivative(link.exterior_derivative(alpha.eta, 1),
                             alpha.omega,
                             link.exterior_derivative(alpha.omega, 2))


def cone_star_2form(alpha):
    """*alpha = dr ^ *omega + r *eta, returned as a HomogeneousTwoForm"""
    link = alpha.link

    return HomogeneousTwoForm(link, link.star(alpha.omega, 2),
                              link.star(alpha.eta, 1))


class ReductionReport(object):
    def __init__(self, closed, d_omega, asd, derived):
        self.closed = closed
        self.d_omega = d_omega
        self.asd = asd
        self.derived = derived

    @property
    def valid(self):
        return max(self.closed, self.d_omega, self.asd,
                   self.derived) <= VALID_TOL

    def to_json(self):
        return {'closed_residual': self.closed,
                'd_omega_residual': self.d_omega,
                'asd_residual': self.asd,
                'derived_residual': self.derived,
                'valid': self.valid}


def asd_closed_reduction(alpha):
    """Residuals of omega = d eta, d omega = 0, *eta = -omega and
    d eta = -*eta"""
    link = alpha.link

    d_eta = link.exterior_derivative(alpha.eta, 1)

    return ReductionReport(
        link.norm(alpha.omega - d_eta),
        link.norm(link.exterior_derivative(alpha.omega, 2)),
        link.norm(link.star(alpha.eta, 1) + alpha.omega),
        link.norm(d_eta + link.star(alpha.eta, 1)))


def curl_blocks(link):
    """*d on 1-forms, per mode"""
    _require_3d(link)

    return np.einsum('ij,mjk->mik', link.star_matrix(2), link.d_blocks(1))


def curl(link, eta):
    return np.einsum('mij,mj->mi', curl_blocks(link), eta)


def curl_spectrum(link, count=None):
    """Eigenvalues of *d on co-closed, non-harmonic 1-forms.

    In every mode k != 0 the gradient direction is dropped; the remaining
    pair is +|k|, -|k|. With `count` only the `count` values of smallest
    modulus are returned.
    """
    if link.cutoff < 2:
        raise ConestabError('Curl spectrum needs a mode cutoff of at least 2')

    blocks = curl_blocks(link)
    nonzero = np.any(link.wavevectors != 0, axis=1)

    values = []

    for k, block in zip(link.wavevectors[nonzero], blocks[nonzero]):
        w, v = np.linalg.eigh(block)

        # gradients i k f lie in the kernel of d
        unit = k / np.linalg.norm(k)
        keep = np.abs(v.T @ unit) < 0.5

        values.extend(w[keep].real)

    values = np.sort(np.array(values))

    if count is not None:
        values = values[np.argsort(np.abs(values), kind='stable')[:count]]
        values = np.sort(values)

    return values


class PSDReport(object):
    def __init__(self, link, degree, min_eigenvalue, gap, kernel_dim):
        self.link = link
        self.degree = degree
        self.min_eigenvalue = min_eigenvalue
        self.gap = gap
        self.kernel_dim = kernel_dim

    @property
    def is_psd(self):
        return self.min_eigenvalue >= -PSD_TOL

    def to_json(self):
        return {'link': self.link.to_json(),
                'degree': self.degree,
                'min_eigenvalue': self.min_eigenvalue,
                'gap': self.gap,
                'kernel_dim': self.kernel_dim}


def hodge_psd_check(link, degree=1, shift=0.0):
    """Bottom of the spectrum of Delta + shift on degree-forms"""
    spectrum = link.hodge_spectrum(degree) + shift

    bottom = float(spectrum[0])
    kernel = int(np.sum(np.abs(spectrum - bottom) <= PSD_TOL))

    above = spectrum[spectrum > bottom + PSD_TOL]
    gap = float(above[0] - bottom) if len(above) else 0.0

    log.debug('hodge_psd_check: %r degree %d -> min %r, gap %r, kernel %d' % (
        link, degree, bottom, gap, kernel))

    return PSDReport(link, degree, bottom, gap, kernel)


def beltrami_field(link, sign=-1):
    """eta = cos t3 dt1 - sign sin t3 dt2, so that *d eta = sign eta"""
    _require_3d(link)

    if sign not in (1, -1):
        raise ConestabError('Beltrami sign must be +1 or -1')

    eta = link.zeros(1)

    up = link.mode_index((0, 0, 1))
    down = link.mode_index((0, 0, -1))

    # cos t3 = (e^it3 + e^-it3) / 2, sin t3 = (e^it3 - e^-it3) / 2i
    eta[up, 0] = eta[down, 0] = 0.5
    eta[up, 1] = sign * 0.5j
    eta[down, 1] = -sign * 0.5j

    return eta


def _ratio(value, eta, link):
    """c with value = c eta, by projection"""
    norm = link.inner(eta, eta)

    if not abs(norm):
        return 0.0

    return float((link.inner(value, eta) / norm).real)


class ConventionLedger(object):
    def __init__(self, link, direct, chains, adjoint_consistent, vacuous):
        self.link = link
        self.direct = direct
        self.chains = chains
        self.adjoint_consistent = adjoint_consistent
        self.vacuous = vacuous

    def to_json(self):
        return {'link': self.link.to_json(),
                'vacuous': self.vacuous,
                'direct_hodge_coefficient': self.direct,
                'convention_table': self.chains,
                'adjoint_consistent': self.adjoint_consistent}


def _codifferentials(link):
    """delta on 1- and 2-forms under both sign conventions.

    (a) delta = -*d* in every degree; (b) delta = (-1)^(n(p+1)+1) *d*,
    which on a 3-manifold is -*d* on 1-forms and +*d* on 2-forms.
    """
    def star_d_star(p):
        return lambda c: link.star(
            link.exterior_derivative(link.star(c, p), link.d - p),
            link.d - p + 1)

    return {
        'a': {1: lambda c: -star_d_star(1)(c), 2: lambda c: -star_d_star(2)(c)},
        'b': {1: lambda c: -star_d_star(1)(c), 2: lambda c: star_d_star(2)(c)},
    }


def neg1_ledger(link, eta=None, rng=None):
    """Delta eta computed directly and along d delta + delta d under both
    codifferential sign conventions, for a field with d eta = -*eta.

    Each entry records the coefficient c of the output c eta.
    """
    _require_3d(link)

    eta = beltrami_field(link, -1) if eta is None else np.asarray(eta)

    vacuous = not link.norm(eta)

    if not vacuous:
        residual = link.norm(link.exterior_derivative(eta, 1) +
                             link.star(eta, 1))

        if residual > VALID_TOL * max(link.norm(eta), 1.0):
            raise ConestabError(
                'Field does not solve d eta = -*eta, residual %.3g' % residual)

    direct = _ratio(link.hodge_laplacian(eta, 1), eta, link)

    chains = {}

    for name, delta in sorted(_codifferentials(link).items()):
        value = (link.exterior_derivative(delta[1](eta), 0) +
                 delta[2](link.exterior_derivative(eta, 1)))

        chains[name] = _ratio(value, eta, link)

    # which convention reproduces the adjoint of d on 2-forms
    rng = rng or np.random.default_rng(0)
    probe = link.random_form(2, rng, modes=2)
    adjoint = link.codifferential(probe, 2)

    consistent = [name for name, delta in sorted(_codifferentials(link).items())
                  if link.norm(delta[2](probe) - adjoint) <=
                  VALID_TOL * max(link.norm(adjoint), 1.0)]

    log.info('neg1_ledger: direct %r, chains %r, adjoint-consistent %s' % (
        direct, chains, consistent))

    return ConventionLedger(link, direct, chains, consistent, vacuous)


def default_link(cutoff=fourier.DEFAULT_CUTOFF):
    return fourier.FourierTorus(3, cutoff)
