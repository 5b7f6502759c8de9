#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Complex structure on R^2n and musical isomorphisms
#
import numpy as np
import scipy.linalg

from conestab.error import ConestabError
from conestab.kernel import forms
from conestab.kernel.linalg import SymMatrix


class ComplexStructure(object):
    """Standard complex structure on R^2n = C^n.

    Coordinates are ordered (x_1, ..., x_n, y_1, ..., y_n) with
    z_j = x_j + i y_j, so that J(d/dx_j) = d/dy_j and J(d/dy_j) = -d/dx_j.
    """
    def __init__(self, n):
        if n < 1 or 2 * n > forms.MAX_DIM:
            raise ConestabError('Complex dimension %s out of range' % n)

        self._n = n

        j = np.zeros((2 * n, 2 * n))
        j[n:, :n] = np.eye(n)
        j[:n, n:] = -np.eye(n)
        j.setflags(write=False)

        self._matrix = j

    @property
    def n(self):
        return self._n

    @property
    def dim(self):
        return 2 * self._n

    @property
    def matrix(self):
        return self._matrix

    def __call__(self, vector):
        vector = np.asarray(vector)

        if vector.shape[-1] != self.dim:
            raise ConestabError('Vector of dimension %d expected' % self.dim)

        # swap halves: (x, y) -> (-y, x)
        return np.concatenate(
            [-vector[..., self._n:], vector[..., :self._n]], axis=-1)

    def to_real(self, z):
        """C^n -> R^2n"""
        z = np.asarray(z, dtype=complex)
        return np.concatenate([z.real, z.imag], axis=-1)

    def to_complex(self, x):
        """R^2n -> C^n"""
        x = np.asarray(x, dtype=float)
        return x[..., :self._n] + 1j * x[..., self._n:]

    def kahler_form(self):
        """omega = sum_j dx_j ^ dy_j"""
        n = self._n

        return forms.KForm(
            2 * n, 2, dict(((j, n + j), 1) for j in range(n)))

    def holomorphic_volume(self):
        """Real and imaginary parts of dz_1 ^ ... ^ dz_n"""
        n = self._n
        omega = forms.KForm(2 * n, 0, {(): 1})

        for j in range(n):
            dz = forms.KForm(2 * n, 1, {(j,): 1, (n + j,): 1j})
            omega = forms.wedge(omega, dz)

        real = forms.KForm(2 * n, n, dict(
            (k, v.real) for k, v in omega.items() if v.real))
        imag = forms.KForm(2 * n, n, dict(
            (k, v.imag) for k, v in omega.items() if v.imag))

        return real, imag


def _metric_array(metric, dim):
    if metric is None:
        return np.eye(dim)

    if not isinstance(metric, SymMatrix):
        metric = SymMatrix(metric)

    if metric.dim != dim:
        raise ConestabError(
            'Metric of dimension %d expected, got %d' % (dim, metric.dim))

    return metric.array


def _cholesky(g):
    try:
        return scipy.linalg.cho_factor(g)

    except np.linalg.LinAlgError:
        raise ConestabError('Metric is not positive definite')


def flat(vector, metric=None):
    """Lower an index: V -> g(V, .) as a 1-form"""
    vector = np.asarray(vector, dtype=float)
    dim = vector.shape[0]

    g = _metric_array(metric, dim)

    _cholesky(g)

    coeffs = g @ vector

    return forms.KForm(dim, 1, dict(((i,), c) for i, c in enumerate(coeffs)))


def sharp(alpha, metric=None):
    """Raise an index: the vector V with g(V, .) = alpha"""
    if alpha.degree != 1:
        raise ConestabError('1-form expected, got degree %d' % alpha.degree)

    g = _metric_array(metric, alpha.dim)

    coeffs = np.array([alpha[(i,)] for i in range(alpha.dim)], dtype=float)

    return scipy.linalg.cho_solve(_cholesky(g), coeffs)
