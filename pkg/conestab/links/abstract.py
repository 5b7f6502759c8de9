#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link geometry shared by all catalog links
#
import numpy as np
import scipy.linalg

from conestab import log
from conestab.error import ChartDegeneracy
from conestab.error import ConestabError
from conestab.error import UnsupportedLink
from conestab.kernel import quadrature

UNIT_TOL = 1e-12
RANK_TOL = 1e-8
CHART_MARGIN = 1e-3


class Chart(object):
    """Coordinate box of a chart; periodic axes wrap around"""
    def __init__(self, name, bounds, periodic):
        self.name = name
        self.bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
        self.periodic = tuple(periodic)

    @property
    def dim(self):
        return len(self.bounds)

    def contains(self, coords):
        for x, (lo, hi), wrap in zip(coords, self.bounds, self.periodic):
            if not wrap and not lo <= x <= hi:
                return False

        return True

    def sample(self, count, rng, margin=CHART_MARGIN):
        columns = []

        for (lo, hi), wrap in zip(self.bounds, self.periodic):
            pad = 0.0 if wrap else margin * (hi - lo)
            columns.append(rng.uniform(lo + pad, hi - pad, count))

        return np.stack(columns, axis=-1)

    def rule(self, resolution):
        rules = []

        for (lo, hi), wrap in zip(self.bounds, self.periodic):
            if wrap:
                x, w = quadrature.periodic_trapezoid(resolution, hi - lo)
                rules.append((lo + x, w))

            else:
                rules.append(quadrature.composite_gauss(
                    lo, hi, max(1, resolution // 8), order=8))

        return quadrature.tensor_rule(*rules)


class LinkPoint(object):
    """Point of a link with the chart it was produced from"""
    def __init__(self, chart, coords, position):
        position = np.array(position, dtype=float)

        if abs(np.linalg.norm(position) - 1.0) > UNIT_TOL * 10:
            raise ConestabError(
                'Link point off the unit sphere by %.3g' % abs(
                    np.linalg.norm(position) - 1.0))

        position.setflags(write=False)

        self.chart = chart
        self.coords = tuple(float(x) for x in coords)
        self.position = position

    def __repr__(self):
        return '%s(%r, %r)' % (self.__class__.__name__, self.chart, self.coords)


class FrameData(object):
    """Orthonormal tangent and sphere-normal frames at a link point.

    Columns of `tangent` follow the chart order (Gram-Schmidt of the
    coordinate vectors), which fixes the orientation of the link.
    """
    def __init__(self, position, tangent, normal, metric, transform):
        self.position = position
        self.tangent = tangent
        self.normal = normal
        self.metric = metric
        # coordinate vectors are tangent @ transform
        self.transform = transform

    @property
    def link_dim(self):
        return self.tangent.shape[1]

    @property
    def codim(self):
        return self.normal.shape[1]

    def orthonormality_residual(self):
        basis = np.column_stack([self.position, self.tangent, self.normal])
        return float(np.max(np.abs(basis.T @ basis - np.eye(basis.shape[1]))))


class SFF(object):
    """Second fundamental form A(E_i, E_j) in an orthonormal tangent frame.

    `vectors[:, i, j]` are ambient normal vectors, `components[k, i, j]`
    their coordinates in the normal frame.
    """
    def __init__(self, vectors, normal, radius=1.0):
        self.vectors = vectors
        self.normal = normal
        self.radius = radius
        self.components = np.einsum('mk,mij->kij', normal, vectors)

    @property
    def norm_sq(self):
        return float(np.sum(self.vectors ** 2))

    @property
    def mean_curvature(self):
        return np.einsum('mii->m', self.vectors)

    def symmetry_residual(self):
        return float(np.max(np.abs(
            self.vectors - np.transpose(self.vectors, (0, 2, 1))), initial=0.0))

    def scaled(self, factor, radius):
        return SFF(self.vectors * factor, self.normal, radius)


class AbstractLink(object):
    """Compact link of a cone in the unit sphere of R^m.

    Subclasses provide charts and the chart maps; the default first and
    second derivatives are central differences and are meant to be
    overridden by analytic ones.
    """
    TYPE = ''

    ambient_dim = 0
    link_dim = 0

    charts = ()

    @property
    def cone_dim(self):
        return self.link_dim + 1

    @property
    def codim(self):
        return self.ambient_dim - self.cone_dim

    @property
    def is_hypersurface(self):
        return self.codim == 1

    def params(self):
        return {}

    def __eq__(self, other):
        return (type(self) is type(other) and
                self.params() == other.params())

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.TYPE, tuple(sorted(self.params().items()))))

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ', '.join(
            '%s=%r' % x for x in sorted(self.params().items())))

    def get_chart(self, chart=None):
        if not self.charts:
            raise UnsupportedLink('%s has no charts' % self.TYPE)

        if chart is None:
            return self.charts[0]

        for candidate in self.charts:
            if candidate.name == chart:
                return candidate

        raise ConestabError('Unknown chart "%s" of %s' % (chart, self.TYPE))

    def position(self, chart, coords):
        raise ConestabError(
            'Method not implemented at '
            '%s' % self.__class__.__name__)

    def jacobian(self, chart, coords):
        coords = np.asarray(coords, dtype=float)

        return np.column_stack([
            quadrature.central_derivative(
                lambda c: self.position(chart, c), coords, e, h=1e-6)
            for e in np.eye(len(coords))])

    def hessian(self, chart, coords):
        coords = np.asarray(coords, dtype=float)
        dim = len(coords)

        h = np.empty((self.ambient_dim, dim, dim))

        for a in range(dim):
            for b in range(dim):
                h[:, a, b] = quadrature.central_hessian(
                    lambda c: self.position(chart, c), coords, a, b)

        return h

    def tangent_basis(self, point):
        """Coordinate tangent vectors at `point` as columns"""
        return self.jacobian(point.chart, point.coords)

    def sample(self, count, rng, chart=None):
        chart = self.get_chart(chart)

        return [embed(self, c, chart.name) for c in chart.sample(count, rng)]

    def volume(self, resolution):
        chart = self.get_chart()

        nodes, weights = chart.rule(resolution)

        total = 0.0

        for coords, w in zip(nodes, weights):
            j = self.jacobian(chart.name, coords)
            total += w * np.sqrt(max(np.linalg.det(j.T @ j), 0.0))

        return float(total)

    def unit_normal(self, point):
        if not self.is_hypersurface:
            raise UnsupportedLink(
                '%s is not a hypersurface link' % self.TYPE)

        return frames(self, point).normal[:, 0]


def embed(spec, coords, chart=None):
    """Map chart coordinates to a point of the link"""
    chart = spec.get_chart(chart)

    coords = np.asarray(coords, dtype=float)

    if coords.shape != (chart.dim,) or not chart.contains(coords):
        raise ConestabError(
            'Coordinates %s outside chart "%s" of %s' % (
                tuple(coords), chart.name, spec.TYPE))

    return LinkPoint(chart.name, coords, spec.position(chart.name, coords))


def frames(spec, point):
    """Orthonormal tangent frame, sphere-normal frame and metric"""
    sigma = point.position

    j = spec.tangent_basis(point)

    q, r = np.linalg.qr(j)

    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0

    q = q * signs
    r = r * signs[:, None]

    scale = max(np.max(np.abs(np.diag(r))), 1.0)

    if np.min(np.abs(np.diag(r))) < RANK_TOL * scale:
        raise ChartDegeneracy(
            'Rank-deficient chart Jacobian at %r, re-chart' % (point,))

    normal = scipy.linalg.null_space(np.column_stack([sigma, q]).T)

    # orient (sigma, tangent, normal) positively
    if normal.shape[1] and np.linalg.det(
            np.column_stack([sigma, q, normal])) < 0:
        normal[:, -1] = -normal[:, -1]

    return FrameData(sigma, q, normal, j.T @ j, r)


def second_fundamental_form(spec, point, frame=None):
    """Second fundamental form of the link inside the unit sphere"""
    frame = frame or frames(spec, point)

    hess = spec.hessian(point.chart, point.coords)

    # keep only the part normal to both the link and the sphere
    proj = frame.normal @ frame.normal.T
    coordinate_sff = np.einsum('mn,nab->mab', proj, hess)

    inv = scipy.linalg.solve_triangular(
        frame.transform, np.eye(frame.link_dim))

    vectors = np.einsum('ai,bj,mab->mij', inv, inv, coordinate_sff)

    return SFF(vectors, frame.normal)


def mean_curvature_residual(spec, point):
    return float(np.linalg.norm(
        second_fundamental_form(spec, point).mean_curvature))


def cone_sff(spec, r, point):
    """Second fundamental form of the cone at r * sigma.

    Radial directions are totally geodesic, so only the link block
    survives, scaled by 1 / r.
    """
    if not r > 0:
        raise ConestabError('Cone radius must be positive, got %s' % r)

    return second_fundamental_form(spec, point).scaled(1.0 / r, r)


def cone_tangent_frame(spec, r, point):
    """Orthonormal frame of the cone at r * sigma: radial first"""
    if not r > 0:
        raise ConestabError('Cone radius must be positive, got %s' % r)

    frame = frames(spec, point)

    return np.column_stack([point.position, frame.tangent])


def link_volume(spec, resolution=32):
    volume = spec.volume(resolution)

    log.debug('link_volume: %s at resolution %d -> %r' % (
        spec, resolution, volume))

    return volume


def sample_points(spec, count, rng, chart=None):
    """Uniform-in-chart samples kept away from chart degeneracies"""
    return spec.sample(count, rng, chart)


def unit_normal(spec, point):
    return spec.unit_normal(point)
