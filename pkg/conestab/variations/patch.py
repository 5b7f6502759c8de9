#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Quadrature patches of a cone over a charted link
#
import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.kernel import quadrature
from conestab.links import abstract

SUPPORT_TOL = 1e-10


def simons_operator(sff, vector):
    """A~(V) = sum_ij <A(E_i, E_j), V> A(E_i, E_j)"""
    vectors = sff.vectors if isinstance(sff, abstract.SFF) else np.asarray(sff)

    return np.einsum('mij,m,nij->n', vectors, np.asarray(vector), vectors)


class PatchNode(object):
    """Link data at one quadrature node, shared along the ray through it"""
    def __init__(self, coords, position, jacobian, weight, projector, sff):
        self.coords = coords
        self.position = position
        self.jacobian = jacobian
        self.weight = weight
        self.projector = projector
        self.sff = sff

        self.metric = jacobian.T @ jacobian
        self.inverse_metric = np.linalg.inv(self.metric)
        self.area = np.sqrt(np.linalg.det(self.metric))


class ConePatch(object):
    """Tensor quadrature on {r sigma : a <= r <= b, sigma in chart}.

    Parameters are (r, chart coordinates); the radial rule is composite
    Gauss in t = log r with optional breakpoints, the link rule the
    chart's own rule. Normal fields are callables (r, coords) -> vector
    in R^m.
    """
    def __init__(self, spec, r_range, resolution=8, radial_pieces=8,
                 breakpoints=(), chart=None):
        a, b = r_range

        if not 0 < a < b:
            raise ConestabError('Bad radial range %s' % (r_range,))

        self.spec = spec
        self.chart = spec.get_chart(chart)
        self.r_range = (float(a), float(b))

        inner = sorted(np.log(x) for x in breakpoints if a < x < b)

        self.t_nodes, t_weights = quadrature.composite_gauss(
            np.log(a), np.log(b), radial_pieces, breakpoints=inner)

        self.radii = np.exp(self.t_nodes)
        # dr = r dt and the cone area element carries r^(n-1)
        self.radial_weights = t_weights * self.radii ** spec.cone_dim

        coords, weights = self.chart.rule(resolution)

        self.nodes = []

        for c, w in zip(coords, weights):
            point = abstract.embed(spec, c, self.chart.name)
            frame = abstract.frames(spec, point)
            sff = abstract.second_fundamental_form(spec, point, frame)

            jac = spec.jacobian(self.chart.name, point.coords)

            self.nodes.append(PatchNode(
                np.array(point.coords), point.position, jac, w,
                frame.normal @ frame.normal.T, sff))

        log.debug('ConePatch: %s, %d radial x %d link nodes' % (
            spec, len(self.radii), len(self.nodes)))

    @property
    def link_volume(self):
        return float(sum(node.weight * node.area for node in self.nodes))

    def position(self, r, coords):
        return r * self.spec.position(self.chart.name, coords)

    def coordinate_vectors(self, r, coords):
        """Columns d/dr, d/dc_1, ... of the cone parametrization"""
        sigma = self.spec.position(self.chart.name, coords)
        jac = self.spec.jacobian(self.chart.name, coords)

        return np.column_stack([sigma, r * jac])

    def metric(self, r, coords):
        vectors = self.coordinate_vectors(r, coords)
        return vectors.T @ vectors

    def check_support(self, field):
        """Normal fields must vanish at both radial ends"""
        for r in self.r_range:
            for node in self.nodes[::max(1, len(self.nodes) // 16)]:
                if np.linalg.norm(field(r, node.coords)) > SUPPORT_TOL:
                    raise ConestabError(
                        'Variation does not vanish at r = %.6g' % r)

    def integrate(self, density):
        """sum over nodes of density(r, node) dH^n"""
        total = 0.0

        for node in self.nodes:
            lw = node.weight * node.area

            for r, rw in zip(self.radii, self.radial_weights):
                total += lw * rw * density(r, node)

        return float(total)


def radial_normal_field(spec, psi, chart=None):
    """psi(r) nu(sigma) on a hypersurface cone"""
    chart = spec.get_chart(chart).name

    def field(r, coords):
        return psi(r) * spec.unit_normal(abstract.embed(spec, coords, chart))

    return field
