#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import numpy as np
import pytest

from conestab import spectral
from conestab import utils
from conestab.error import ConestabError
from conestab.error import GridTooCoarse
from conestab.error import HypothesisViolation
from conestab.error import SingularPoint
from conestab.error import UnsupportedLink
from conestab.kernel.structure import ComplexStructure
from conestab.links import catalog
from conestab.links.harveylawson import HarveyLawsonT2Link
from conestab.links.quadric import ComplexQuadricLink
from conestab.variations import cutoff
from conestab.variations import patch
from conestab.variations import polynomial
from conestab.variations import secondvar
from conestab.variations.polynomial import HolomorphicPolynomial

EPS = np.exp(-np.pi)


def _cone_points(f, rng, count):
    points = [polynomial.retract_to_cone(f, seed)
              for seed in rng.standard_normal((count, 2 * f.nvars))]

    return [p for p in points if p is not None]


def test_polynomial_basics():
    f = HolomorphicPolynomial.quadric()

    assert f.nvars == 3
    assert f.degree == 2
    assert f.complex_dim == 2
    assert f.real_dim == 4
    assert f == HolomorphicPolynomial.fermat(3, 2)
    assert f != HolomorphicPolynomial.fermat(3, 3)

    assert f([1.0, 1j, 0.0]) == 0
    assert f(np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0])) == 0


def test_polynomial_evaluates_batches():
    f = HolomorphicPolynomial(2, {(1, 1): 2.0, (2, 0): 1j})

    z = np.array([[1.0, 2.0], [1j, 1.0]])

    assert np.allclose(f(z), [4.0 + 1j, 2j - 1j])


def test_polynomial_json():
    f = HolomorphicPolynomial(3, {(1, 2, 0): 1 - 2j, (0, 0, 3): 4})

    assert HolomorphicPolynomial.from_json(f.to_json()) == f


@pytest.mark.parametrize('nvars,terms', [
    (2, {(2, 0): 1, (1, 0): 1}),
    (2, {(1, 1): 0}),
    (2, {(1, 1, 0): 1}),
    (2, {(-1, 3): 1}),
    (9, {(1,) * 9: 1}),
])
def test_polynomial_rejects(nvars, terms):
    with pytest.raises(ConestabError):
        HolomorphicPolynomial(nvars, terms)


def test_polynomial_from_malformed_json():
    with pytest.raises(ConestabError):
        HolomorphicPolynomial.from_json({'terms': []})

    with pytest.raises(ConestabError):
        HolomorphicPolynomial.from_json({'nvars': 2, 'terms': [[[1, 1]]]})


@pytest.mark.parametrize('f', [
    HolomorphicPolynomial.quadric(),
    HolomorphicPolynomial.fermat(3, 3),
    HolomorphicPolynomial(3, {(1, 1, 1): 1, (3, 0, 0): 2j}),
])
def test_cauchy_riemann(rng, f):
    for x in rng.standard_normal((5, 2 * f.nvars)):
        assert polynomial.cauchy_riemann_check(f, x) < 1e-12
        assert polynomial.cauchy_riemann_check(f, x, 'fd') < 1e-7

    with pytest.raises(ConestabError):
        polynomial.cauchy_riemann_check(f, x, 'spectral')


def test_retract_to_cone(rng):
    f = HolomorphicPolynomial.fermat(3, 3)

    points = _cone_points(f, rng, 10)

    assert points

    for x in points:
        assert abs(f(x)) < 1e-12
        assert np.isclose(np.linalg.norm(x), 1.0)


def test_isolated_singularity_probe(rng):
    report = polynomial.isolated_singularity_probe(
        HolomorphicPolynomial.quadric(), 20, rng)

    # |df| = 2 |z| on the quadric
    assert report.min_gradient == pytest.approx(2.0)
    assert report.accepted > 0
    assert set(report.to_json()) == {
        'min_gradient', 'point', 'accepted', 'skipped'}


def test_isolated_singularity_probe_flags_singular_lines(rng):
    # z1 z2^2 is singular along z2 = 0
    f = HolomorphicPolynomial(2, {(1, 2): 1})

    with pytest.raises(HypothesisViolation):
        polynomial.isolated_singularity_probe(f, 5, rng)


def test_jacobi_field_homogeneity():
    w = polynomial.JacobiFieldW(HolomorphicPolynomial.quadric())

    assert w.homogeneity == -1
    assert w.critical_homogeneity == -1.0

    w = polynomial.JacobiFieldW(HolomorphicPolynomial.fermat(3, 3))

    assert w.homogeneity == -2
    assert w.critical_homogeneity == -1.0


def test_jacobi_field_is_normal(rng):
    f = HolomorphicPolynomial.fermat(3, 3)
    field = polynomial.JacobiFieldW(f)

    for x in _cone_points(f, rng, 5):
        w = polynomial.jacobi_field_W(f, x)

        tangent = polynomial.cone_tangent_basis(f, x)

        assert tangent.shape == (6, 4)
        assert np.allclose(tangent.T @ w, 0.0, atol=1e-12)
        assert np.dot(w, w) == pytest.approx(field.norm_sq(x))

        # degree 1 - d in r
        assert np.allclose(field(2.0 * x), w / 4.0)


def test_jacobi_field_singular_points():
    f = HolomorphicPolynomial.quadric()

    with pytest.raises(SingularPoint):
        polynomial.jacobi_field_W(f, np.zeros(6))

    with pytest.raises(ConestabError):
        polynomial.jacobi_field_W(f, np.eye(6)[0])

    g = HolomorphicPolynomial(2, {(1, 2): 1})

    with pytest.raises(SingularPoint):
        polynomial.jacobi_field_W(g, np.eye(4)[0])


@pytest.mark.parametrize('f', [
    HolomorphicPolynomial.quadric(),
    HolomorphicPolynomial.fermat(3, 3),
])
def test_flow_follows_level_sets(rng, f):
    point = _cone_points(f, rng, 3)[0]

    report = polynomial.flow_level_sets(f, point, 0.5, samples=6)

    assert len(report.times) == 6
    assert report.times[-1] == 0.5
    assert report.u_residual < 1e-6
    assert report.v_residual < 1e-6
    assert report.to_json()['samples'] == 6


def test_sup_constant_of_quadric(rng):
    # |df|^2 = 4 on the link
    K = polynomial.sup_constant_K(HolomorphicPolynomial.quadric(), 20, rng)

    assert K == pytest.approx(0.25, rel=1e-9)


def test_sup_constant_bounds_samples(rng):
    f = HolomorphicPolynomial.fermat(3, 3)
    field = polynomial.JacobiFieldW(f)

    K = polynomial.sup_constant_K(f, 50, rng)

    # attained where |z_j|^2 = 1/3
    assert K == pytest.approx(1.0 / 3.0, rel=1e-3)

    for x in _cone_points(f, rng, 20):
        assert field.norm_sq(x) <= K * (1 + 1e-6)


def test_cutoff_profile():
    assert cutoff.cutoff(2.0, 1.0) == (1.0, 0.0)
    assert cutoff.cutoff(1.0, np.exp(3.0)) == (0.0, 0.0)
    assert cutoff.cutoff(1.0, np.exp(-2.0))[0] == 0.0

    phi, dphi = cutoff.cutoff(1.0, np.exp(-1.5))

    assert phi == pytest.approx(0.5)
    assert dphi == pytest.approx(np.exp(1.5))

    phi, dphi = cutoff.cutoff(1.0, np.exp(1.5))

    assert phi == pytest.approx(0.5)
    assert dphi == pytest.approx(-np.exp(-1.5))


def test_cutoff_vectorized():
    r = np.exp(np.array([-3.0, -1.5, 0.0, 1.5, 3.0]))

    phi, dphi = cutoff.cutoff(1.0, r)

    assert np.allclose(phi, [0.0, 0.5, 1.0, 0.5, 0.0])
    assert dphi.shape == (5,)


@pytest.mark.parametrize('N,r', [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
def test_cutoff_rejects(N, r):
    with pytest.raises(ConestabError):
        cutoff.cutoff(N, r)


def test_cutoff_breakpoints():
    assert np.allclose(cutoff.cutoff_breakpoints(1.0),
                       np.exp([-2.0, -1.0, 1.0, 2.0]))


def test_link_of():
    assert isinstance(cutoff.link_of(HolomorphicPolynomial.quadric()),
                      ComplexQuadricLink)

    with pytest.raises(UnsupportedLink):
        cutoff.link_of(HolomorphicPolynomial.fermat(3, 3))


def test_quadric_link_integrals(rng):
    integrals = cutoff.LinkIntegrals(
        HolomorphicPolynomial.quadric(), samples=200, rng=rng)

    assert integrals.volume == pytest.approx(4 * np.pi ** 2, rel=1e-6)
    assert integrals.K == pytest.approx(0.25, rel=1e-12)
    assert integrals.node_K == pytest.approx(0.25, rel=1e-12)
    assert integrals.sampled_K == pytest.approx(0.25, rel=1e-9)
    assert integrals.w_sq == pytest.approx(np.pi ** 2, rel=1e-6)
    assert integrals.power == 1


def test_link_integrals_take_the_sampled_sup():
    f = HolomorphicPolynomial.quadric()

    integrals = cutoff.LinkIntegrals(f, samples=50, rng=utils.make_rng(7))
    expected = polynomial.sup_constant_K(f, 50, utils.make_rng(7))

    assert integrals.sampled_K == expected
    assert integrals.K == max(integrals.node_K, expected)
    assert integrals.K >= integrals.node_K

    nodes_only = cutoff.LinkIntegrals(f, samples=0)

    assert nodes_only.sampled_K is None
    assert nodes_only.K == nodes_only.node_K

    with pytest.raises(ConestabError):
        cutoff.LinkIntegrals(f, samples=-1)


@pytest.mark.parametrize('N', [1.0, 4.0, 16.0])
def test_second_variation_cutoff_of_quadric(N):
    f = HolomorphicPolynomial.quadric()

    value, bound = cutoff.second_variation_cutoff(f, N, samples=100)

    # equality in the coarea bound since |W|^2 is constant on the link
    assert value == pytest.approx(2 * np.pi ** 2 / N, rel=1e-6)
    assert value == pytest.approx(bound, rel=1e-6)


def test_rayleigh_decay_of_quadric(rng):
    report = cutoff.rayleigh_decay(HolomorphicPolynomial.quadric(),
                                   [4, 8, 16, 32], samples=100, rng=rng)

    assert report.is_decreasing
    assert report.K == pytest.approx(0.25)

    for row in report.rows:
        assert row['rayleigh'] == pytest.approx(
            3.0 / (4 * row['N'] ** 2), rel=1e-6)
        assert row['Q'] <= row['bound'] * (1 + 1e-9)

    assert np.allclose(report.ratios, 0.25)

    doc = report.to_json()

    assert doc['f'] == HolomorphicPolynomial.quadric().to_json()
    assert doc['sampled_K'] == pytest.approx(0.25)
    assert doc['K'] >= doc['node_K']
    assert len(doc['rows']) == 4


@pytest.mark.parametrize('N_values', [[], [8, 4], [4, 4]])
def test_rayleigh_decay_rejects(N_values):
    with pytest.raises(ConestabError):
        cutoff.rayleigh_decay(HolomorphicPolynomial.quadric(), N_values)


def test_rayleigh_decay_unsupported_cone():
    with pytest.raises(UnsupportedLink):
        cutoff.rayleigh_decay(HolomorphicPolynomial.fermat(3, 3), [4, 8])


@pytest.mark.parametrize('N', [4.0, 8.0])
def test_cutoff_field_direct_second_variation(N):
    f = HolomorphicPolynomial.quadric()

    cone = patch.ConePatch(
        ComplexQuadricLink(), (np.exp(-2 * N), np.exp(2 * N)), resolution=4,
        breakpoints=cutoff.cutoff_breakpoints(N))

    field = cutoff.jacobi_cutoff_field(cone, f, N)

    value = secondvar.second_variation_direct(cone, field)

    # W is a Jacobi field, so only the |grad phi|^2 |W|^2 term survives
    coarea, _ = cutoff.second_variation_cutoff(f, N, samples=0)

    assert value == pytest.approx(2 * np.pi ** 2 / N, rel=0.02)
    assert value == pytest.approx(coarea, rel=0.02)


def test_cone_patch_rejects_bad_range():
    with pytest.raises(ConestabError):
        patch.ConePatch(catalog.lawson(1, 1), (1.0, 0.5))

    with pytest.raises(ConestabError):
        patch.ConePatch(catalog.lawson(1, 1), (0.0, 1.0))


def test_cone_patch_metric():
    spec = catalog.lawson(1, 2)
    cone = patch.ConePatch(spec, (EPS, 1.0), resolution=4)

    coords = cone.nodes[0].coords
    g = cone.metric(2.0, coords)

    assert g[0, 0] == pytest.approx(1.0)
    assert np.allclose(g[0, 1:], 0.0, atol=1e-12)
    assert np.allclose(g[1:, 1:], 4.0 * cone.nodes[0].metric)


def test_cone_patch_integrates_volume():
    spec = catalog.lawson(1, 1)
    cone = patch.ConePatch(spec, (0.5, 1.0))

    # H^3 of the truncated cone is H^2(Sigma) (1 - 1/8) / 3
    expected = spec.volume() * (1.0 - 0.125) / 3.0

    assert cone.integrate(lambda r, node: 1.0) == pytest.approx(
        expected, rel=1e-10)


def test_check_support():
    spec = catalog.lawson(1, 1)
    cone = patch.ConePatch(spec, (0.5, 1.0), resolution=4)

    with pytest.raises(ConestabError):
        secondvar.second_variation_direct(
            cone, patch.radial_normal_field(spec, lambda r: 1.0))


def _sl_field(cone, psi):
    structure = ComplexStructure(3)

    def field(r, coords):
        return psi(r) * structure(
            cone.spec.position(cone.chart.name, coords))

    return field


def test_special_lagrangian_second_variation():
    cone = patch.ConePatch(HarveyLawsonT2Link(), (EPS, 1.0))

    section = spectral.TestSection.radial_mode(3, EPS, 1)
    field = _sl_field(cone, section.psi)

    value = secondvar.sl_second_variation_forms(cone, field, check_tol=1e-5)
    direct = secondvar.second_variation_direct(cone, field)

    assert value > 0
    assert value == pytest.approx(direct, rel=1e-5)


def test_special_lagrangian_mismatch_is_reported():
    cone = patch.ConePatch(HarveyLawsonT2Link(), (EPS, 1.0), resolution=4)

    section = spectral.TestSection.radial_mode(3, EPS, 1)

    with pytest.raises(GridTooCoarse) as exc_info:
        secondvar.sl_second_variation_forms(
            cone, _sl_field(cone, section.psi), check_tol=1e-14)

    assert 'forms' in exc_info.value
    assert 'direct' in exc_info.value


def _combination(terms):
    terms = list(terms)

    def field(r, coords):
        return sum(c * term(r, coords) for c, term in terms)

    return field


def test_direct_second_variation_is_quadratic(rng):
    cone = patch.ConePatch(HarveyLawsonT2Link(), (EPS, 1.0), resolution=4)

    profiles = [spectral.TestSection.radial_mode(3, EPS, i).psi
                for i in (1, 2, 3)]
    profiles.append(spectral.TestSection.bump(0.1, 0.6).psi)

    fields = [_sl_field(cone, psi) for psi in profiles]

    a, b = rng.standard_normal((2, len(fields)))

    u = _combination(zip(a, fields))
    v = _combination(zip(b, fields))

    def Q(field):
        return secondvar.second_variation_direct(cone, field)

    qu, qv = Q(u), Q(v)

    # parallelogram law of a quadratic form
    total = Q(_combination([(1, u), (1, v)])) + \
        Q(_combination([(1, u), (-1, v)]))

    assert total == pytest.approx(2 * qu + 2 * qv, rel=1e-8, abs=1e-10)

    for alpha in (-0.5, 3.0, 1e-3):
        assert Q(_combination([(alpha, u)])) == pytest.approx(
            alpha ** 2 * qu, rel=1e-8, abs=1e-12)


def test_special_lagrangian_needs_even_ambient():
    spec = catalog.lawson(1, 2)
    cone = patch.ConePatch(spec, (EPS, 1.0), resolution=4)

    with pytest.raises(ConestabError):
        secondvar.sl_second_variation_forms(
            cone, patch.radial_normal_field(spec, lambda r: 0.0))
