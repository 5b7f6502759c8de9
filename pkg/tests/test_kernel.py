#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import itertools

import numpy as np
import pytest
import scipy.linalg

from conestab.error import ConestabError
from conestab.error import ConvergenceError
from conestab.kernel import forms
from conestab.kernel import linalg
from conestab.kernel import ode
from conestab.kernel import quadrature
from conestab.kernel.structure import ComplexStructure
from conestab.kernel.structure import flat
from conestab.kernel.structure import sharp


def _random_form(rng, dim, degree):
    return forms.KForm(dim, degree, dict(
        (idx, rng.standard_normal())
        for idx in itertools.combinations(range(dim), degree)))


def test_permutation_sign():
    assert forms.permutation_sign((0, 1, 2)) == 1
    assert forms.permutation_sign((1, 0, 2)) == -1
    assert forms.permutation_sign((2, 0, 1)) == 1
    assert forms.permutation_sign((1, 1)) == 0


def test_kform_canonical_storage():
    a = forms.KForm(4, 2, {(1, 0): 2.0, (0, 1): 0.5})

    assert a.coeffs == {(0, 1): -1.5}
    assert a[(1, 0)] == 1.5
    assert a[(0, 0)] == 0
    assert forms.KForm(4, 2, {(2, 3): 1.0, (3, 2): 1.0}).coeffs == {}


@pytest.mark.parametrize('dim,degree,coeffs', [
    (0, 0, None),
    (3, 4, None),
    (3, 2, {(0,): 1.0}),
    (3, 1, {(3,): 1.0}),
])
def test_kform_rejects(dim, degree, coeffs):
    with pytest.raises(ConestabError):
        forms.KForm(dim, degree, coeffs)


def test_wedge_anticommutes():
    a = forms.dx(5, 1)
    b = forms.dx(5, 2)

    assert a ^ b == -(b ^ a)
    assert (a ^ a).coeffs == {}
    assert a ^ b == forms.dx(5, 1, 2)


def test_wedge_degree_overflow():
    with pytest.raises(ConestabError):
        forms.wedge(forms.dx(3, 1, 2), forms.dx(3, 2, 3))


@pytest.mark.parametrize('dim,degree', [
    (dim, degree) for dim in range(1, 9) for degree in range(dim + 1)])
def test_double_star(rng, dim, degree):
    a = _random_form(rng, dim, degree)
    sign = (-1) ** (degree * (dim - degree))

    twice = forms.hodge_star(forms.hodge_star(a))

    assert twice.max_abs_difference(a * sign) < 1e-14


def test_star_of_volume():
    vol = forms.dx(3, 1, 2, 3)

    assert forms.hodge_star(vol) == forms.KForm(3, 0, {(): 1})
    assert forms.hodge_star(vol, orientation=-1) == forms.KForm(3, 0, {(): -1})

    with pytest.raises(ConestabError):
        forms.hodge_star(vol, orientation=2)


def test_star_table_matches_hodge_star():
    for idx, comp, sign in forms.star_table(5, 2):
        basis = forms.KForm(5, 2, {idx: 1})
        assert forms.hodge_star(basis) == forms.KForm(5, 3, {comp: sign})


def test_interior_product():
    e1 = np.array([1.0, 0.0, 0.0])

    assert forms.interior_product(e1, forms.dx(3, 1, 2)) == forms.dx(3, 2)
    assert forms.interior_product(e1, forms.dx(3, 2, 1)) == -forms.dx(3, 2)
    assert forms.interior_product(e1, forms.dx(3, 2, 3)).coeffs == {}


@pytest.mark.parametrize('dim,p,q', [
    (3, 1, 1), (4, 1, 2), (4, 2, 2), (5, 2, 3), (6, 3, 2), (7, 3, 4)])
def test_interior_product_is_an_antiderivation(rng, dim, p, q):
    a = _random_form(rng, dim, p)
    b = _random_form(rng, dim, q)
    v = rng.standard_normal(dim)

    left = forms.interior_product(v, a ^ b)
    right = (forms.interior_product(v, a) ^ b) + \
        (a ^ forms.interior_product(v, b)) * (-1) ** p

    assert left.max_abs_difference(right) < 1e-12


def test_evaluate_form():
    e = np.eye(4)
    a = forms.dx(4, 1, 2)

    assert forms.evaluate_form(a, [e[0], e[1]]) == 1
    assert forms.evaluate_form(a, [e[1], e[0]]) == -1
    assert forms.evaluate_form(a, [e[2], e[3]]) == 0


def test_evaluate_form_batched(rng):
    a = _random_form(rng, 5, 3)
    frames = rng.standard_normal((7, 5, 3))

    batched = forms.evaluate_form(a, frames)

    assert batched.shape == (7,)

    for i in range(7):
        single = forms.evaluate_form(a, [frames[i][:, k] for k in range(3)])
        assert np.isclose(batched[i], single, rtol=1e-12, atol=1e-12)


def test_evaluate_form_shape_mismatch():
    with pytest.raises(ConestabError):
        forms.evaluate_form(forms.dx(4, 1, 2), np.zeros((4, 3)))


def test_complex_structure_squares_to_minus_one(rng):
    j = ComplexStructure(3)
    v = rng.standard_normal(6)

    assert np.allclose(j(j(v)), -v)
    assert np.allclose(j.matrix @ v, j(v))
    assert np.allclose(j.to_real(j.to_complex(v)), v)


def test_kahler_form_is_compatible(rng):
    j = ComplexStructure(3)
    omega = j.kahler_form()
    e = np.eye(6)

    assert forms.evaluate_form(omega, [e[0], j(e[0])]) == 1

    u, v = rng.standard_normal((2, 6))

    assert np.isclose(forms.evaluate_form(omega, [u, v]),
                      np.dot(j(u), v), atol=1e-12)


def test_holomorphic_volume_in_one_dimension():
    real, imag = ComplexStructure(1).holomorphic_volume()

    assert real == forms.dx(2, 1)
    assert imag == forms.dx(2, 2)


def test_holomorphic_volume_of_complex_plane():
    real, imag = ComplexStructure(2).holomorphic_volume()

    # dz1 ^ dz2 = (dx1 dx2 - dy1 dy2) + i (dx1 dy2 + dy1 dx2)
    assert real == forms.dx(4, 1, 2) - forms.dx(4, 3, 4)
    assert imag == forms.dx(4, 1, 4) + forms.dx(4, 3, 2)


def test_flat_sharp_with_metric(rng):
    m = rng.standard_normal((4, 4))
    g = m @ m.T + 4 * np.eye(4)
    v = rng.standard_normal(4)

    assert np.allclose(sharp(flat(v, g), g), v)


def test_flat_rejects_indefinite_metric():
    with pytest.raises(ConestabError):
        flat(np.ones(2), np.diag([1.0, -1.0]))


def test_sym_matrix_mirrors_upper_triangle():
    m = linalg.SymMatrix([[1.0, 2.0], [5.0, 3.0]])

    assert np.array_equal(m.array, [[1.0, 2.0], [2.0, 3.0]])


@pytest.mark.parametrize('entries', [
    [[1.0, 2.0, 3.0]],
    [[1.0, np.nan], [0.0, 1.0]],
])
def test_sym_matrix_rejects(entries):
    with pytest.raises(ConestabError):
        linalg.SymMatrix(entries)


def test_dense_eigensolvers_agree(rng):
    m = rng.standard_normal((6, 6))
    m = m + m.T

    w_lapack, _ = linalg.sym_eig(m, 'lapack')
    w_jacobi, v_jacobi = linalg.sym_eig(m, 'jacobi')

    assert np.allclose(w_lapack, w_jacobi, atol=1e-10)
    assert np.allclose(v_jacobi.T @ v_jacobi, np.eye(6), atol=1e-12)
    assert np.allclose(m @ v_jacobi, v_jacobi * w_jacobi, atol=1e-10)

    with pytest.raises(ConestabError):
        linalg.sym_eig(m, 'magic')


def _circulant(row):
    row = np.asarray(row, dtype=float)
    return np.array([np.roll(row, i) for i in range(len(row))])


@pytest.mark.parametrize('method', ['lapack', 'jacobi'])
@pytest.mark.parametrize('m,expected', [
    (np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]),
     [2 - np.sqrt(2.0), 2.0, 2 + np.sqrt(2.0)]),
    # symmetric circulant: 2 + 2 cos(2 pi j / 5)
    (_circulant([2.0, 1.0, 0.0, 0.0, 1.0]),
     sorted(2 + 2 * np.cos(2 * np.pi * np.arange(5) / 5))),
    # path Laplacian: 2 - 2 cos(j pi / 8)
    (2 * np.eye(7) - np.eye(7, k=1) - np.eye(7, k=-1),
     2 - 2 * np.cos(np.arange(1, 8) * np.pi / 8)),
])
def test_dense_eigensolvers_match_closed_form(method, m, expected):
    w, v = linalg.sym_eig(m, method)

    assert np.allclose(w, expected, atol=1e-12)
    assert np.allclose(m @ v, v * w, atol=1e-10)


@pytest.mark.parametrize('method', ['lanczos', 'arpack', 'shift-invert'])
def test_sparse_smallest_eigs_on_laplacian(method):
    count = 100
    h = 1.0 / (count + 1)
    op = quadrature.dirichlet_laplacian(count, h)

    values = linalg.sparse_smallest_eigs(
        op, count, count=3, tol=1e-10, method=method)

    exact = (2 - 2 * np.cos(np.pi * h * np.arange(1, 4))) / h ** 2

    assert np.allclose(values, exact, rtol=1e-8)


def test_sparse_smallest_eigs_with_weights(rng):
    dim = 30
    s = quadrature.dirichlet_laplacian(dim, 1.0).toarray()
    w = rng.uniform(0.5, 2.0, dim)

    values, vectors = linalg.sparse_smallest_eigs(
        s / w[:, None], dim, count=2, tol=1e-10, weights=w,
        return_vectors=True)

    exact = scipy.linalg.eigh(s, np.diag(w), eigvals_only=True)[:2]

    assert np.allclose(values, exact, rtol=1e-8)
    assert np.allclose(vectors.T @ (w[:, None] * vectors), np.eye(2),
                       atol=1e-8)


def test_sparse_smallest_eigs_callback():
    diag = np.arange(1.0, 51.0)

    values = linalg.sparse_smallest_eigs(lambda x: diag * x, 50, count=2)

    assert np.allclose(values, [1.0, 2.0])


@pytest.mark.parametrize('kwargs', [
    {'count': 0},
    {'count': 11},
    {'method': 'magic'},
    {'weights': -np.ones(10)},
])
def test_sparse_smallest_eigs_rejects(kwargs):
    with pytest.raises(ConestabError):
        linalg.sparse_smallest_eigs(np.eye(10), 10, **kwargs)


def test_shift_invert_needs_matrix():
    with pytest.raises(ConestabError):
        linalg.sparse_smallest_eigs(lambda x: x, 10, method='shift-invert')


def test_lanczos_survives_invariant_subspace(rng):
    # two distinct eigenvalues only
    diag = np.array([1.0] * 5 + [3.0] * 5)

    q, alphas, betas = linalg.lanczos(lambda x: diag * x, 10, 10, rng)

    assert np.allclose(q.T @ q, np.eye(10), atol=1e-10)


def test_gauss_legendre_is_exact_for_polynomials():
    x, w = quadrature.gauss_legendre(0.0, 2.0, 3)

    assert np.isclose(np.sum(w * x ** 5), 64.0 / 6.0, rtol=1e-14)


def test_composite_gauss_respects_breakpoints():
    x, w = quadrature.composite_gauss(-1.0, 2.0, 3, order=4,
                                      breakpoints=[0.0])

    assert np.isclose(np.sum(w * np.abs(x)), 2.5, rtol=1e-14)


def test_periodic_trapezoid():
    x, w = quadrature.periodic_trapezoid(16)

    assert np.isclose(np.sum(w * np.cos(x) ** 2), np.pi, rtol=1e-14)


def test_tensor_rule_area():
    points, weights = quadrature.tensor_rule(
        quadrature.gauss_legendre(0.0, 1.0, 2),
        quadrature.gauss_legendre(0.0, 2.0, 3))

    assert points.shape == (6, 2)
    assert np.isclose(np.sum(weights), 2.0)
    assert np.isclose(np.sum(weights * points[:, 0] * points[:, 1]), 1.0)


def test_cheb_differentiates_cubics():
    d, r = quadrature.cheb(8, (0.5, 2.0))

    assert np.all(np.diff(r) > 0)
    assert np.isclose(r[0], 0.5) and np.isclose(r[-1], 2.0)
    assert np.allclose(d @ r ** 3, 3 * r ** 2, atol=1e-10)


def test_periodic_second_difference():
    count = 64
    h = 2 * np.pi / count
    x = np.arange(count) * h

    m = quadrature.periodic_second_difference(count, h)

    assert np.allclose(m @ np.sin(x), -np.sin(x), atol=2e-3)


def test_finite_differences():
    f = lambda p: p[0] ** 2 * p[1]
    x = np.array([1.0, 2.0])

    assert np.isclose(quadrature.central_derivative(f, x, [1.0, 0.0]), 4.0)
    assert np.isclose(quadrature.central_hessian(f, x, 0, 1), 2.0, atol=1e-6)
    assert np.isclose(quadrature.central_hessian(f, x, 0, 0), 4.0, atol=1e-6)


def test_observed_order():
    h = np.array([0.1, 0.05, 0.025])
    values = 1.0 + h ** 2

    assert np.isclose(quadrature.observed_order(*values), 2.0)
    assert quadrature.observed_order(1.0, 1.0, 1.0) == float('inf')


def test_integrate_exponential():
    trajectory = ode.integrate(lambda t, y: y, [1.0], 1.0, tol=1e-10,
                               record=[0.5])

    assert np.isclose(trajectory.final[0], np.e, rtol=1e-8)
    assert 0.5 in trajectory.times
    assert trajectory.times[-1] == 1.0


def test_integrate_backwards():
    trajectory = ode.integrate(lambda t, y: y, [np.e], 0.0, t0=1.0,
                               tol=1e-10)

    assert np.isclose(trajectory.final[0], 1.0, rtol=1e-8)
    assert np.all(np.diff(trajectory.times) < 0)


def test_integrate_step_budget():
    with pytest.raises(ConvergenceError) as exc:
        ode.integrate(lambda t, y: y, [1.0], 10.0, tol=1e-12, max_steps=3)

    assert exc.value['iterations'] == 3
