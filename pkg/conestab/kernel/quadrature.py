#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Quadrature rules and finite-difference helpers
#
import numpy as np
import scipy.sparse

from conestab.error import ConestabError


def gauss_legendre(a, b, order):
    """Gauss-Legendre nodes and weights on [a, b]"""
    if order < 1:
        raise ConestabError('Quadrature order must be positive')

    x, w = np.polynomial.legendre.leggauss(order)

    half = 0.5 * (b - a)

    return a + half * (x + 1.0), half * w


def composite_gauss(a, b, pieces, order=8, breakpoints=None):
    """Piecewise Gauss-Legendre rule.

    `breakpoints` (sorted, inside [a, b]) are always kept as piece
    boundaries, so kinks of the integrand can be integrated exactly.
    """
    edges = [a, b] + [x for x in (breakpoints or ()) if a < x < b]
    edges = np.unique(edges)

    nodes = []
    weights = []

    for lo, hi in zip(edges[:-1], edges[1:]):
        count = max(1, int(np.ceil(pieces * (hi - lo) / (b - a))))

        for left, right in zip(np.linspace(lo, hi, count + 1)[:-1],
                               np.linspace(lo, hi, count + 1)[1:]):
            x, w = gauss_legendre(left, right, order)
            nodes.append(x)
            weights.append(w)

    return np.concatenate(nodes), np.concatenate(weights)


def periodic_trapezoid(count, period=2 * np.pi):
    """Equispaced rule, spectrally accurate for periodic integrands"""
    if count < 1:
        raise ConestabError('Need at least one node')

    x = np.arange(count) * (period / count)

    return x, np.full(count, period / count)


def tensor_rule(*rules):
    """Tensor product of 1D rules.

    Returns (points of shape (N, d), weights of shape (N,)).
    """
    grids = np.meshgrid(*[r[0] for r in rules], indexing='ij')
    weights = np.ones(())

    for _, w in rules:
        weights = np.multiply.outer(weights, w)

    return (np.stack([g.ravel() for g in grids], axis=-1),
            np.asarray(weights).ravel())


def cheb(n, interval=(-1.0, 1.0)):
    """Chebyshev differentiation matrix on n + 1 Gauss-Lobatto points.

    Points are returned in increasing order.
    """
    if n < 1:
        raise ConestabError('Chebyshev grid needs n >= 1')

    x = np.cos(np.pi * np.arange(n + 1) / n)

    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)

    dx = x[:, None] - x[None, :]

    d = np.outer(c, 1.0 / c) / (dx + np.eye(n + 1))
    d -= np.diag(d.sum(axis=1))

    a, b = interval
    scale = 2.0 / (b - a)

    # flip to increasing order
    x = x[::-1]
    d = d[::-1, ::-1]

    return scale * d, a + (x + 1.0) * (b - a) / 2.0


def dirichlet_laplacian(count, h):
    """Sparse (-1, 2, -1) / h^2 on `count` interior nodes"""
    main = np.full(count, 2.0 / h ** 2)
    off = np.full(count - 1, -1.0 / h ** 2)

    return scipy.sparse.diags([off, main, off], [-1, 0, 1], format='csr')


def periodic_second_difference(count, h):
    """Sparse periodic (1, -2, 1) / h^2"""
    if count < 3:
        raise ConestabError('Periodic stencil needs at least 3 nodes')

    main = np.full(count, -2.0 / h ** 2)
    off = np.full(count - 1, 1.0 / h ** 2)

    m = scipy.sparse.diags([off, main, off], [-1, 0, 1], format='lil')
    m[0, count - 1] = m[count - 1, 0] = 1.0 / h ** 2

    return m.tocsr()


def central_derivative(func, x, direction, h=1e-5):
    """Second-order central difference of `func` at `x` along `direction`"""
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)

    return (np.asarray(func(x + h * direction)) -
            np.asarray(func(x - h * direction))) / (2.0 * h)


def central_hessian(func, x, i, j, h=1e-4):
    """Mixed second partial d2 func / dx_i dx_j by central differences"""
    x = np.asarray(x, dtype=float)
    ei = np.zeros_like(x)
    ej = np.zeros_like(x)
    ei[i] = h
    ej[j] = h

    f = lambda p: np.asarray(func(p))

    if i == j:
        return (f(x + ei) - 2.0 * f(x) + f(x - ei)) / h ** 2

    return (f(x + ei + ej) - f(x + ei - ej) -
            f(x - ei + ej) + f(x - ei - ej)) / (4.0 * h ** 2)


def observed_order(coarse, medium, fine, ratio=2.0):
    """Richardson estimate of the convergence order from three levels"""
    num = abs(coarse - medium)
    den = abs(medium - fine)

    if den == 0 or num == 0:
        return float('inf')

    return float(np.log(num / den) / np.log(ratio))
