#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Symmetric eigensolvers
#
import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from conestab import log
from conestab.error import ConestabError
from conestab.error import ConvergenceError

DEFAULT_TOL = 1e-8


class SymMatrix(object):
    """Dense real symmetric matrix.

    Only the upper triangle of the input is read; the lower one is
    mirrored from it, so the stored matrix is symmetric by construction.
    """
    def __init__(self, entries):
        a = np.array(entries, dtype=float)

        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ConestabError('Square matrix expected, got shape %s' % (a.shape,))

        if not np.all(np.isfinite(a)):
            raise ConestabError('Non-finite matrix entries')

        upper = np.triu(a)
        self._a = upper + np.triu(a, 1).T
        self._a.setflags(write=False)

    @property
    def dim(self):
        return self._a.shape[0]

    @property
    def array(self):
        return self._a

    def __array__(self, dtype=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __repr__(self):
        return '%s(dim=%d)' % (self.__class__.__name__, self.dim)


def _as_array(m):
    if isinstance(m, SymMatrix):
        return m.array

    return SymMatrix(m).array


def jacobi_eig(a, tol=1e-14, max_sweeps=64):
    """Cyclic Jacobi rotations on a dense symmetric matrix.

    Returns (eigenvalues ascending, orthonormal eigenvector columns).
    """
    a = np.array(_as_array(a), dtype=float)
    d = a.shape[0]
    v = np.eye(d)

    scale = max(np.linalg.norm(a), np.finfo(float).tiny)

    for sweep in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))

        if off <= tol * scale:
            break

        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]

                if abs(apq) <= np.finfo(float).tiny:
                    continue

                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))

                if theta < 0:
                    t = -t

                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq

                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    else:
        raise ConvergenceError(
            'Jacobi rotations did not converge in %d sweeps' % max_sweeps,
            residual=float(off), iterations=max_sweeps)

    log.debug('jacobi_eig: dim %d, %d sweeps' % (d, sweep))

    w = np.diag(a).copy()
    order = np.argsort(w, kind='stable')

    return w[order], v[:, order]


def sym_eig(m, method='lapack'):
    """Full eigendecomposition of a dense symmetric matrix.

    `method` is 'lapack' (divide and conquer) or 'jacobi' (cyclic
    rotations, slower but self-contained).
    """
    a = _as_array(m)

    if method == 'lapack':
        return scipy.linalg.eigh(a)

    elif method == 'jacobi':
        return jacobi_eig(a)

    raise ConestabError('Unknown dense eigensolver "%s"' % method)


def _as_operator(op, dim):
    if callable(op):
        return op, None

    if scipy.sparse.issparse(op):
        matrix = op.tocsr()

    else:
        matrix = np.asarray(op, dtype=float)

    if matrix.shape != (dim, dim):
        raise ConestabError(
            'Operator shape %s does not match dim %d' % (matrix.shape, dim))

    return (lambda x: matrix @ x), matrix


def lanczos(apply, dim, steps, rng):
    """Lanczos tridiagonalization with full reorthogonalization.

    On breakdown (an invariant subspace is exhausted) a fresh random start
    vector orthogonal to the current basis continues the iteration, so the
    tridiagonal matrix becomes block diagonal instead of stopping early.

    Returns (Q, alphas, betas) with Q of shape (dim, steps') where
    steps' <= steps.
    """
    steps = min(steps, dim)

    q_basis = np.zeros((dim, steps))
    alphas = np.zeros(steps)
    betas = np.zeros(max(steps - 1, 0))

    q = rng.standard_normal(dim)
    q /= np.linalg.norm(q)

    q_prev = np.zeros(dim)
    beta = 0.0

    for j in range(steps):
        q_basis[:, j] = q

        u = apply(q)
        alpha = np.dot(q, u)
        alphas[j] = alpha

        u = u - alpha * q - beta * q_prev

        # twice is enough
        for _ in range(2):
            u -= q_basis[:, :j + 1] @ (q_basis[:, :j + 1].T @ u)

        if j == steps - 1:
            break

        beta = np.linalg.norm(u)

        if beta <= 1e-12 * max(abs(alpha), 1.0):
            # invariant subspace found, restart in its complement
            u = rng.standard_normal(dim)
            for _ in range(2):
                u -= q_basis[:, :j + 1] @ (q_basis[:, :j + 1].T @ u)

            beta = 0.0
            q_prev = np.zeros(dim)
            q = u / np.linalg.norm(u)

        else:
            q_prev = q
            q = u / beta

        betas[j] = beta

    return q_basis, alphas, betas


def _lanczos_smallest(apply, dim, count, tol, rng, max_steps):
    steps = min(dim, max(2 * count + 20, 40))

    while True:
        q_basis, alphas, betas = lanczos(apply, dim, steps, rng)

        if len(alphas) == 1:
            theta, s = alphas.copy(), np.ones((1, 1))

        else:
            theta, s = scipy.linalg.eigh_tridiagonal(alphas, betas)

        vectors = q_basis @ s[:, :count]

        residuals = np.array([
            np.linalg.norm(apply(vectors[:, i]) - theta[i] * vectors[:, i])
            for i in range(min(count, len(theta)))])

        scale = max(np.max(np.abs(theta)), 1.0)

        log.debug('lanczos: dim %d, steps %d, max residual %.3g' % (
            dim, steps, residuals.max()))

        if steps >= dim or np.all(residuals <= tol * scale):
            return theta[:count], vectors, residuals

        if steps >= max_steps:
            raise ConvergenceError(
                'Lanczos did not converge in %d steps' % steps,
                residual=float(residuals.max()), iterations=steps)

        steps = min(dim, max_steps, 2 * steps)


def _gershgorin_lower(matrix):
    matrix = scipy.sparse.csr_matrix(matrix)
    diag = matrix.diagonal()
    radius = np.asarray(abs(matrix).sum(axis=1)).ravel() - np.abs(diag)
    return float(np.min(diag - radius))


def sparse_smallest_eigs(op, dim, count=1, tol=DEFAULT_TOL, weights=None,
                         method='lanczos', seed=0, max_steps=4000,
                         return_vectors=False):
    """Smallest eigenvalues of a symmetric operator.

    `op` is a callback x -> A x, a dense array or a scipy sparse matrix.
    With `weights` w the operator is taken symmetric in the inner product
    sum(w x y); the problem is symmetrized as W^1/2 A W^-1/2 and returned
    eigenvectors are mapped back and W-orthonormal.

    Methods:

    * 'lanczos' - Krylov iteration with full reorthogonalization
    * 'arpack' - implicitly restarted Lanczos (ARPACK), smallest algebraic
    * 'shift-invert' - ARPACK in shift-invert mode around a Gershgorin
      lower bound; needs `op` as a matrix
    """
    if count < 1 or count > dim:
        raise ConestabError('Bad eigenvalue count %s for dim %s' % (count, dim))

    apply, matrix = _as_operator(op, dim)

    if weights is not None:
        weights = np.asarray(weights, dtype=float)

        if weights.shape != (dim,) or np.any(weights <= 0):
            raise ConestabError('Weights must be %d positive numbers' % dim)

        root = np.sqrt(weights)
        raw_apply = apply
        apply = lambda y: root * raw_apply(y / root)

        if matrix is not None:
            inv_root = scipy.sparse.diags(1.0 / root)
            matrix = scipy.sparse.diags(root) @ scipy.sparse.csr_matrix(
                matrix) @ inv_root

    rng = np.random.default_rng(seed)

    if method == 'lanczos':
        values, vectors, residuals = _lanczos_smallest(
            apply, dim, count, tol, rng, max_steps)

    elif method in ('arpack', 'shift-invert'):
        v0 = rng.standard_normal(dim)

        if method == 'arpack' or matrix is None:
            if method == 'shift-invert':
                raise ConestabError('Shift-invert mode needs a matrix operator')

            linop = scipy.sparse.linalg.LinearOperator(
                (dim, dim), matvec=apply, dtype=float)

            try:
                values, vectors = scipy.sparse.linalg.eigsh(
                    linop, k=count, which='SA', tol=tol, v0=v0,
                    maxiter=max_steps)

            except scipy.sparse.linalg.ArpackNoConvergence as exc:
                raise ConvergenceError(
                    'ARPACK did not converge: %s' % exc,
                    residual=float('nan'), iterations=max_steps)

        else:
            sigma = _gershgorin_lower(matrix) - 1.0

            try:
                values, vectors = scipy.sparse.linalg.eigsh(
                    scipy.sparse.csc_matrix(matrix), k=count, sigma=sigma,
                    which='LM', tol=tol, v0=v0, maxiter=max_steps)

            except scipy.sparse.linalg.ArpackNoConvergence as exc:
                raise ConvergenceError(
                    'ARPACK did not converge: %s' % exc,
                    residual=float('nan'), iterations=max_steps)

        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]

    else:
        raise ConestabError('Unknown sparse eigensolver "%s"' % method)

    if not return_vectors:
        return values

    if weights is not None:
        vectors = vectors / root[:, None]

    return values, vectors
