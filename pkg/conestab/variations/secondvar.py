#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Second variation of area on cone patches
#
import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.error import GridTooCoarse
from conestab.kernel.structure import ComplexStructure
from conestab.variations.patch import simons_operator

DEFAULT_STEP = 1e-5


def _parameter_derivatives(func, r, coords, step):
    """Central differences of func(r, coords) along r and every coordinate.

    The radial step is relative to r.
    """
    h_r = step * r

    derivs = [(np.asarray(func(r + h_r, coords)) -
               np.asarray(func(r - h_r, coords))) / (2 * h_r)]

    for i in range(len(coords)):
        e = np.zeros(len(coords))
        e[i] = step

        derivs.append((np.asarray(func(r, coords + e)) -
                       np.asarray(func(r, coords - e))) / (2 * step))

    return derivs


def second_variation_direct(patch, field, step=DEFAULT_STEP):
    """Q(V, V) = int |grad^perp V|^2 - <V, A~(V)> over the patch.

    The normal connection is the normal projection of central
    differences of V along the parameter directions.
    """
    patch.check_support(field)

    def density(r, node):
        v = node.projector @ field(r, node.coords)

        derivs = [node.projector @ d for d in _parameter_derivatives(
            field, r, node.coords, step)]

        grad_sq = float(np.dot(derivs[0], derivs[0]))

        tangential = np.array(derivs[1:])
        grad_sq += float(np.sum(
            node.inverse_metric * (tangential @ tangential.T))) / r ** 2

        # <V, A~(V)> = sum_ij <A_ij, V>^2; the cone form is the link one over r
        simons = float(np.dot(v, simons_operator(node.sff, v)))

        return grad_sq - simons / r ** 2

    value = patch.integrate(density)

    log.debug('second_variation_direct: %s -> %r' % (patch.spec, value))

    return value


def sl_second_variation_forms(patch, field, step=DEFAULT_STEP, check_tol=None):
    """Q = int |d alpha|^2 + |delta alpha|^2 with alpha = (JV)^flat.

    d and delta are taken by central differences in the cone parameters
    (r, coords) with the induced metric. With `check_tol` the result is
    compared against the direct second variation and GridTooCoarse
    carries both values when they differ by more than the tolerance.
    """
    m = patch.spec.ambient_dim

    if m % 2:
        raise ConestabError('Special Lagrangian patches live in C^n')

    structure = ComplexStructure(m // 2)

    patch.check_support(field)

    def alpha(r, coords):
        return patch.coordinate_vectors(r, coords).T @ structure(
            field(r, coords))

    def flux(r, coords):
        g = patch.metric(r, coords)
        return np.sqrt(np.linalg.det(g)) * np.linalg.solve(g, alpha(r, coords))

    def density(r, node):
        coords = node.coords

        g = patch.metric(r, coords)
        g_inv = np.linalg.inv(g)
        sqrt_det = np.sqrt(np.linalg.det(g))

        grad = np.array(_parameter_derivatives(alpha, r, coords, step))
        # grad[a, b] = d_a alpha_b
        d_alpha = grad - grad.T

        d_sq = 0.5 * float(np.trace(g_inv @ d_alpha @ g_inv @ d_alpha.T))

        div = sum(d[a] for a, d in enumerate(
            _parameter_derivatives(flux, r, coords, step)))

        delta = -div / sqrt_det

        return d_sq + delta ** 2

    value = patch.integrate(density)

    log.debug('sl_second_variation_forms: %s -> %r' % (patch.spec, value))

    if check_tol is not None:
        direct = second_variation_direct(patch, field, step)

        if abs(value - direct) > check_tol * max(abs(direct), 1e-12):
            raise GridTooCoarse(
                'Form-based and direct second variations disagree: '
                '%r vs %r' % (value, direct), forms=value, direct=direct)

    return value
