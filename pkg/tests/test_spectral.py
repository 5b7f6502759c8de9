#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import numpy as np
import pytest

from conestab import spectral
from conestab.error import ConestabError
from conestab.error import HypothesisViolation
from conestab.error import UnsupportedLink
from conestab.kernel import quadrature
from conestab.links import abstract
from conestab.links import catalog
from conestab.links import hopf
from conestab.links import spheres
from conestab.variations import patch
from conestab.variations import secondvar

EPS = np.exp(-np.pi)


def test_gamma():
    # log eps = -pi
    assert np.isclose(spectral.gamma(3, EPS, 1), 0.25 + 1.0)
    assert np.isclose(spectral.gamma(4, EPS, 2), 1.0 + 4.0)

    with pytest.raises(ConestabError):
        spectral.gamma(3, 1.0, 1)

    with pytest.raises(ConestabError):
        spectral.gamma(3, EPS, 0)


@pytest.mark.parametrize('n,mu1,expected', [
    (3, -2.0, -1.75),
    (4, 0.0, 1.0),
    (7, -6.0, 0.25),
    (8, -9.0, 0.0),
])
def test_d0(n, mu1, expected):
    assert np.isclose(spectral.d0(n, mu1), expected)


def test_verdict_of():
    assert spectral.verdict_of(0.25) == spectral.STRICTLY_STABLE
    assert spectral.verdict_of(-1.75) == spectral.NOT_STABLE
    assert spectral.verdict_of(0.0) == spectral.STABLE_NOT_STRICT


def test_critical_values():
    assert spectral.critical_mu(7) == -6.25
    assert spectral.critical_homogeneity(4) == -1.0


@pytest.mark.parametrize('n', [3, 4, 7])
@pytest.mark.parametrize('eps', spectral.DEFAULT_EPS)
def test_radial_eigs_match_closed_form(n, eps):
    problem = spectral.radial_eigs(n, eps, grid=256)

    assert len(problem.values) == 3
    assert np.all(problem.rel_errors() < 1e-3)
    assert np.all(np.diff(problem.values) > 0)


def test_radial_eigenfunctions_are_normalized():
    n = 5
    problem = spectral.radial_eigs(n, EPS, grid=128)

    h = -np.log(EPS) / problem.grid
    r = problem.radii

    for phi in problem.functions:
        # int phi^2 r^(n-3) dr = int psi^2 dt
        assert np.isclose(h * np.sum(phi ** 2 * r ** (n - 2)), 1.0)


def test_radial_eigs_converge_at_second_order():
    values = [spectral.radial_eigs(7, EPS, grid, count=1).values[0]
              for grid in (64, 128, 256)]

    assert abs(quadrature.observed_order(*values) - 2.0) < 0.1


@pytest.mark.parametrize('kwargs', [
    {'n': 3, 'eps': 1.5},
    {'n': 3, 'eps': EPS, 'grid': 8},
    {'n': 1, 'eps': EPS},
])
def test_radial_eigs_rejects(kwargs):
    with pytest.raises(ConestabError):
        spectral.radial_eigs(**kwargs)


def test_scalar_link_spectrum_of_lawson_links():
    spectrum = spectral.scalar_link_spectrum(catalog.lawson(2, 3), 3)

    assert spectrum.mu1 == pytest.approx(-5.0)
    assert spectrum.multiplicities[0] == 1
    assert spectrum.mu(1) == spectrum.mu1

    with pytest.raises(ConestabError):
        spectrum.mu(10)


def test_scalar_link_spectrum_rejects_higher_codimension():
    with pytest.raises(UnsupportedLink):
        spectral.scalar_link_spectrum(hopf.HopfGraphLink())

    with pytest.raises(UnsupportedLink):
        spectral.scalar_link_spectrum(spheres.RoundSphere(2, 5))


@pytest.mark.parametrize('k,l,d0,verdict', [
    (1, 1, -1.75, spectral.NOT_STABLE),
    (2, 3, -1.0, spectral.NOT_STABLE),
    (3, 3, 0.25, spectral.STRICTLY_STABLE),
    (1, 5, 0.25, spectral.STRICTLY_STABLE),
])
def test_classify_lawson(k, l, d0, verdict):
    report = spectral.classify(catalog.lawson(k, l))

    assert report.n == k + l + 1
    assert report.d0 == pytest.approx(d0)
    assert report.verdict == verdict
    assert all(row['rel_err'] < 0.01 for row in report.lambda1_table)

    doc = report.to_json()

    assert doc['link']['type'] == 'product-of-spheres'
    assert doc['verdict'] == verdict


def test_classify_round_sphere():
    report = spectral.classify(spheres.RoundSphere(3))

    assert report.n == 4
    assert report.d0 == pytest.approx(1.0)
    assert report.verdict == spectral.STRICTLY_STABLE


def test_classify_explicit_mu1():
    report = spectral.classify(None, mu1=-1.0, n=4, eps_values=[EPS])

    assert report.d0 == 0.0
    assert report.verdict == spectral.STABLE_NOT_STRICT
    assert report.to_json()['link'] is None


def test_classify_rejects():
    with pytest.raises(HypothesisViolation):
        spectral.classify(spheres.ProductOfSpheres(
            1, 2, *spheres.printed_radii(1, 2)))

    with pytest.raises(UnsupportedLink):
        spectral.classify(hopf.HopfGraphLink())

    with pytest.raises(ConestabError):
        spectral.classify(None, mu1=-1.0)

    with pytest.raises(ConestabError):
        spectral.classify(None, n=4)


def test_classify_ignores_chart_orientation():
    spec = catalog.lawson(2, 2)

    flipped = catalog.lawson(2, 2)
    flipped.charts = flipped.charts[::-1]

    assert flipped.get_chart().name == 'reversed'

    report = spectral.classify(spec, eps_values=[EPS], grid=128)
    other = spectral.classify(flipped, eps_values=[EPS], grid=128)

    assert other.verdict == report.verdict
    assert other.mu1 == report.mu1
    assert other.lambda1_table == report.lambda1_table


def test_direct_second_variation_ignores_chart_orientation():
    spec = catalog.lawson(1, 1)
    section = spectral.TestSection.radial_mode(3, EPS, 1)

    values = []

    for name in ('angles', 'reversed'):
        cone = patch.ConePatch(spec, (EPS, 1.0), chart=name)
        field = patch.radial_normal_field(spec, section.psi, chart=name)

        values.append(secondvar.second_variation_direct(cone, field))

    assert values[1] == pytest.approx(values[0], rel=1e-9)


def test_lawson_sweep():
    rows = spectral.lawson_sweep(range(2, 11))

    assert not [row for row in rows if row['n'] == 2]
    assert len([row for row in rows if row['n'] == 5]) == 3

    for row in rows:
        n = row['n']

        assert row['k'] + row['l'] == n - 1
        assert row['mu1'] == 1.0 - n
        assert np.isclose(row['d0'], (n ** 2 - 8 * n + 8) / 4.0)

        if n >= 7:
            assert row['verdict'] == spectral.STRICTLY_STABLE

        else:
            assert row['verdict'] == spectral.NOT_STABLE

    three = [row for row in rows if row['n'] == 3][0]

    assert three['d0'] == -1.75


def test_lawson_sweep_range():
    with pytest.raises(ConestabError):
        spectral.lawson_sweep([13])


def test_truncated_clifford_torus():
    value = spectral.truncated_cone_lambda1(catalog.lawson(1, 1), EPS)

    assert value == pytest.approx(-0.75, rel=0.02)


def test_truncated_round_sphere():
    value = spectral.truncated_cone_lambda1(spheres.RoundSphere(3), EPS)

    assert value == pytest.approx(spectral.gamma(4, EPS, 1), rel=0.01)


def test_truncated_rejects():
    with pytest.raises(UnsupportedLink):
        spectral.truncated_cone_lambda1(catalog.lawson(2, 2), EPS)

    with pytest.raises(UnsupportedLink):
        spectral.truncated_cone_lambda1(hopf.HopfGraphLink(), EPS)

    with pytest.raises(ConestabError):
        spectral.truncated_cone_lambda1(catalog.lawson(1, 1), EPS, (8, 16))


@pytest.mark.parametrize('k,l', [(1, 1), (3, 3)])
def test_radial_mode_quotient(k, l):
    spec = catalog.lawson(k, l)
    n = spec.cone_dim

    section = spectral.TestSection.radial_mode(n, EPS, 1)

    expected = spectral.gamma(n, EPS, 1) + 1.0 - n

    assert spectral.stability_quotient(spec, section) == pytest.approx(
        expected, rel=1e-9)


@pytest.mark.parametrize('c', [1e-3, 1.0, 1e3])
def test_stability_quotient_is_scale_invariant(c):
    spec = catalog.lawson(2, 2)
    n = spec.cone_dim

    sections = [spectral.TestSection.radial_mode(n, EPS, 1),
                spectral.TestSection.radial_mode(n, EPS, 2, mode=2),
                spectral.TestSection.bump(0.1, 0.5, mode=2)]

    base = spectral.stability_quotient(spec, sections)
    scaled = spectral.stability_quotient(
        spec, [s.scaled(c) for s in sections])

    assert scaled == pytest.approx(base, rel=1e-10)

    for section in sections:
        assert spectral.stability_quotient(
            spec, section.scaled(c)) == pytest.approx(
                spectral.stability_quotient(spec, section), rel=1e-10)


def test_random_sections_stay_above_d0(rng):
    spec = catalog.lawson(3, 3)

    d0 = spectral.d0(7, -6.0)

    for parts in spectral.random_sections(7, rng, EPS, 50):
        assert spectral.stability_quotient(spec, parts) >= d0 - 1e-9


def test_separation_identity():
    quad, closed, residual = spectral.separation_identity(
        catalog.lawson(1, 2), EPS, [[1.0, 0.5], [-0.3, 2.0]])

    assert residual < 1e-8
    assert quad == pytest.approx(closed, rel=1e-8)


def test_quotient_sweep_decreases_to_d0():
    spec = catalog.lawson(2, 2)
    eps_values = [np.exp(-2.0), np.exp(-4.0), np.exp(-8.0)]

    values = [q for _, q in spectral.quotient_sweep(spec, eps_values)]

    assert np.all(np.diff(values) < 0)
    assert all(q > spectral.d0(5, -4.0) for q in values)


def test_test_section_support():
    with pytest.raises(ConestabError):
        spectral.TestSection.bump(0.5, 0.2)

    with pytest.raises(ConestabError):
        spectral.TestSection.bump(0.5, 2.0)


def test_bump_vanishes_off_support():
    section = spectral.TestSection.bump(0.1, 0.5)

    assert section.psi(0.05) == 0.0
    assert section.psi(0.9) == pytest.approx(0.0, abs=1e-15)
    assert section.dpsi(np.array([0.05]))[0] == 0.0
    assert section.psi(np.sqrt(0.05)) == pytest.approx(1.0)


def test_simons_bound(rng):
    for spec in (catalog.lawson(2, 2), hopf.HopfGraphLink()):
        assert spectral.simons_bound_check(spec, 10, rng) <= 1e-10


def test_direct_second_variation_of_radial_mode():
    spec = catalog.lawson(1, 1)
    section = spectral.TestSection.radial_mode(3, EPS, 1)

    cone = patch.ConePatch(spec, (EPS, 1.0))
    field = patch.radial_normal_field(spec, section.psi)

    value = secondvar.second_variation_direct(cone, field)

    assert cone.link_volume == pytest.approx(spec.volume(), rel=1e-10)
    assert value / cone.link_volume == pytest.approx(
        spectral.gamma(3, EPS, 1) - 2.0, rel=1e-6)


def test_simons_operator_bound(rng):
    spec = catalog.lawson(2, 3)
    point = abstract.sample_points(spec, 1, rng)[0]
    sff = abstract.second_fundamental_form(spec, point)

    v = sff.normal[:, 0]

    assert np.isclose(np.dot(v, patch.simons_operator(sff, v)),
                      spec.sff_norm_sq())
