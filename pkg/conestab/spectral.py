#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Stability classification of minimal cones from link spectra
#
import numpy as np
import scipy.sparse

from conestab import log
from conestab.error import ConestabError
from conestab.error import HypothesisViolation
from conestab.error import UnsupportedLink
from conestab.kernel import linalg
from conestab.kernel import quadrature
from conestab.links import abstract
from conestab.links import catalog
from conestab.links import spheres
from conestab.variations import patch

STRICTLY_STABLE = 'StrictlyStable'
STABLE_NOT_STRICT = 'StableNotStrictlyStable'
NOT_STABLE = 'NotStableByCriterion'

DEFAULT_EPS = (np.exp(-np.pi), np.exp(-2.0))
MIN_RADIAL_GRID = 16
VERDICT_TOL = 1e-12

ORIENTATION = 'chart order'


def _check_eps(eps):
    if not 0 < eps < 1:
        raise ConestabError('Truncation radius must lie in (0, 1), got %s' % eps)


def gamma(n, eps, i):
    """gamma_i(eps) = (n-2)^2/4 + (i pi / log eps)^2"""
    _check_eps(eps)

    if n < 2 or i < 1:
        raise ConestabError('Need n >= 2 and i >= 1')

    return (n - 2) ** 2 / 4.0 + (i * np.pi / np.log(eps)) ** 2


def critical_mu(n):
    """Link eigenvalue at which d0 changes sign"""
    return -(n - 2) ** 2 / 4.0


def critical_homogeneity(n):
    return (2.0 - n) / 2.0


def d0(n, mu1):
    """d0 = (n-2)^2/4 + mu1"""
    return (n - 2) ** 2 / 4.0 + mu1


def verdict_of(d, tol=VERDICT_TOL):
    if d > tol:
        return STRICTLY_STABLE

    elif d < -tol:
        return NOT_STABLE

    return STABLE_NOT_STRICT


class RadialEigenProblem(object):
    """Eigenpairs of -T on [eps, 1] with Dirichlet ends.

    In t = log r and psi = r^((n-2)/2) phi the problem becomes
    -psi'' + (n-2)^2/4 psi on [log eps, 0]. Eigenfunctions are stored as
    phi on the interior radii, orthonormal for (phi, chi) = int phi chi
    r^(n-3) dr.
    """
    def __init__(self, n, eps, grid, values, radii, functions):
        self.n = n
        self.eps = eps
        self.grid = grid
        self.values = values
        self.radii = radii
        self.functions = functions

    @property
    def analytic(self):
        return np.array([gamma(self.n, self.eps, i + 1)
                         for i in range(len(self.values))])

    def rel_errors(self):
        return np.abs(self.values - self.analytic) / np.abs(self.analytic)


def radial_eigs(n, eps, grid=256, count=3, method='shift-invert'):
    _check_eps(eps)

    if grid < MIN_RADIAL_GRID:
        raise ConestabError(
            'Radial grid of %d cells is below the minimum %d' % (
                grid, MIN_RADIAL_GRID))

    if n < 2:
        raise ConestabError('Cone dimension must be at least 2')

    length = -np.log(eps)
    h = length / grid
    interior = grid - 1

    op = quadrature.dirichlet_laplacian(interior, h) + (
        (n - 2) ** 2 / 4.0) * scipy.sparse.identity(interior, format='csr')

    values, vectors = linalg.sparse_smallest_eigs(
        op, interior, count=count, method=method, return_vectors=True)

    t = np.log(eps) + h * np.arange(1, grid)
    radii = np.exp(t)

    functions = []

    for psi in vectors.T:
        psi = psi / np.sqrt(h * np.dot(psi, psi))

        if psi[np.argmax(np.abs(psi))] < 0:
            psi = -psi

        functions.append(radii ** ((2.0 - n) / 2) * psi)

    log.debug('radial_eigs: n %d, eps %.6g, grid %d -> %s' % (
        n, eps, grid, ', '.join('%.10g' % v for v in values)))

    return RadialEigenProblem(n, eps, grid, np.asarray(values), radii,
                              np.array(functions))


class LinkSpectrum(object):
    """Distinct eigenvalues mu_j of the link operator with multiplicities"""
    def __init__(self, values, multiplicities):
        self.values = list(values)
        self.multiplicities = list(multiplicities)

    @property
    def mu1(self):
        return self.values[0]

    def mu(self, j):
        """1-based mode index"""
        if not 1 <= j <= len(self.values):
            raise ConestabError('Mode %s outside computed spectrum' % j)

        return self.values[j - 1]

    def to_json(self):
        return [{'mode': j + 1, 'mu': mu, 'multiplicity': m}
                for j, (mu, m) in enumerate(zip(self.values,
                                                self.multiplicities))]


def scalar_link_spectrum(spec, count=6):
    """mu_j = (Laplace eigenvalue) - |A|^2 for hypersurface links"""
    if not isinstance(spec, (spheres.ProductOfSpheres, spheres.RoundSphere)):
        raise UnsupportedLink(
            'No scalar spectrum for %s links: the normal bundle has rank %d; '
            'the form-based arguments of conestab.variations and '
            'conestab.coneforms apply instead' % (spec.TYPE, spec.codim))

    if not spec.is_hypersurface:
        raise UnsupportedLink(
            '%s of codimension %d is not a hypersurface link' % (
                spec.TYPE, spec.codim))

    a_sq = spec.sff_norm_sq()

    spectrum = spec.laplace_spectrum(count)

    return LinkSpectrum([value - a_sq for value, _ in spectrum],
                        [mult for _, mult in spectrum])


class SpectralReport(object):
    def __init__(self, link, n, mu1, d0, verdict, lambda1_table, grid,
                 seed=0, expansion=None):
        self.link = link
        self.n = n
        self.mu1 = mu1
        self.d0 = d0
        self.verdict = verdict
        self.lambda1_table = lambda1_table
        self.grid = grid
        self.seed = seed
        self.expansion = expansion

    def to_json(self):
        doc = {
            'link': catalog.to_json(self.link) if self.link else None,
            'n': self.n,
            'mu1': self.mu1,
            'd0': self.d0,
            'verdict': self.verdict,
            'lambda1_table': self.lambda1_table,
            'grid': self.grid,
            'seed': self.seed,
            'orientation': ORIENTATION,
        }

        if self.expansion is not None:
            doc['expansion'] = self.expansion

        return doc


def _require_minimal(spec):
    if isinstance(spec, spheres.ProductOfSpheres) and not spec.is_minimal:
        raise HypothesisViolation(
            'S^%d(%r) x S^%d(%r) is not minimal in the sphere' % (
                spec.k, spec.r1, spec.l, spec.r2))


def classify(spec, mu1=None, eps_values=DEFAULT_EPS, grid=256, seed=0,
             n=None):
    """Verdict from the sign of d0 = (n-2)^2/4 + mu1.

    An explicit `mu1` (with `n` when `spec` is None) bypasses the scalar
    spectrum for links whose first eigenvalue is known otherwise.
    """
    if spec is not None:
        _require_minimal(spec)
        n = spec.cone_dim

    if n is None:
        raise ConestabError('Cone dimension unknown')

    if mu1 is None:
        if spec is None:
            raise ConestabError('Need a link or an explicit mu1')

        mu1 = scalar_link_spectrum(spec).mu1

    d = d0(n, mu1)
    verdict = verdict_of(d)

    table = []

    for eps in eps_values:
        radial = gamma(n, eps, 1)
        analytic = radial + mu1
        numeric = radial_eigs(n, eps, grid, count=1).values[0] + mu1

        # mu1 is exact, so the error is that of the radial eigenvalue
        table.append({
            'eps': float(eps),
            'analytic': float(analytic),
            'numeric': float(numeric),
            'rel_err': float(abs(numeric - analytic) / radial)
        })

    log.info('classify: %s n=%d mu1=%r d0=%r -> %s' % (
        spec, n, mu1, d, verdict))

    return SpectralReport(spec, n, float(mu1), float(d), verdict, table,
                          grid, seed)


def _flux_radial_operator(n, eps, grid):
    """-w^-1 (w psi')' with w = e^((n-2)t) on interior nodes of [log eps, 0].

    Returns (sparse operator, mass weights w_i, node radii).
    """
    length = -np.log(eps)
    h = length / grid

    t = np.log(eps) + h * np.arange(grid + 1)
    w_half = np.exp((n - 2) * (t[:-1] + h / 2))
    w = np.exp((n - 2) * t[1:-1])

    lower = -w_half[1:-1] / (h ** 2 * w[1:])
    upper = -w_half[1:-1] / (h ** 2 * w[:-1])
    main = (w_half[:-1] + w_half[1:]) / (h ** 2 * w)

    op = scipy.sparse.diags([lower, main, upper], [-1, 0, 1], format='csr')

    return op, w, np.exp(t[1:-1])


def truncated_cone_lambda1(spec, eps, grid=(64, 16), method='shift-invert'):
    """Smallest eigenvalue of -r^2 L on the truncated cone over [eps, 1].

    Round-sphere links reduce to the constant link mode; the Clifford
    torus link (n = 3) is discretized on a periodic (t1, t2) grid. The
    weight is r^-2 dH^n, i.e. e^((n-2)t) dt dSigma.
    """
    _check_eps(eps)

    n_r, n_theta = grid

    if n_r < MIN_RADIAL_GRID:
        raise ConestabError('Radial grid too coarse: %d' % n_r)

    n = spec.cone_dim

    radial, w, _ = _flux_radial_operator(n, eps, n_r)
    size = n_r - 1

    if isinstance(spec, spheres.RoundSphere):
        values = linalg.sparse_smallest_eigs(
            radial, size, weights=w, method=method)

        return float(values[0])

    if not (isinstance(spec, spheres.ProductOfSpheres) and
            spec.k == spec.l == 1):
        raise UnsupportedLink(
            'No product grid for %s links' % spec.TYPE)

    _require_minimal(spec)

    h = 2 * np.pi / n_theta
    d2 = quadrature.periodic_second_difference(n_theta, h)
    eye = scipy.sparse.identity(n_theta, format='csr')

    torus = -(scipy.sparse.kron(d2, eye) / spec.r1 ** 2 +
              scipy.sparse.kron(eye, d2) / spec.r2 ** 2)
    torus = torus - spec.sff_norm_sq() * scipy.sparse.identity(
        n_theta ** 2, format='csr')

    op = (scipy.sparse.kron(radial, scipy.sparse.identity(n_theta ** 2)) +
          scipy.sparse.kron(scipy.sparse.identity(size), torus)).tocsr()

    weights = np.kron(w, np.ones(n_theta ** 2))

    values = linalg.sparse_smallest_eigs(
        op, op.shape[0], weights=weights, method=method)

    log.debug('truncated_cone_lambda1: %s eps %.6g grid %s -> %r' % (
        spec, eps, grid, values[0]))

    return float(values[0])


class TestSection(object):
    """Normal section psi(r) V_j with V_j the j-th normalized link mode.

    `psi` and `dpsi` are callables on radii; `support` is the radial
    interval outside of which psi vanishes.
    """
    def __init__(self, psi, dpsi, mode, support):
        a, b = support

        if not 0 < a < b <= 1:
            raise ConestabError('Support must lie in (0, 1]')

        self.psi = psi
        self.dpsi = dpsi
        self.mode = int(mode)
        self.support = (float(a), float(b))

    @classmethod
    def radial_mode(cls, n, eps, i, mode=1, amplitude=1.0):
        """phi_i = r^((2-n)/2) sin(i pi log r / log eps), normalized"""
        _check_eps(eps)

        length = -np.log(eps)
        norm = amplitude * np.sqrt(2.0 / length)
        k = i * np.pi / length
        p = (2.0 - n) / 2

        psi = lambda r: norm * r ** p * np.sin(k * np.log(r))
        dpsi = lambda r: norm * r ** (p - 1) * (
            p * np.sin(k * np.log(r)) + k * np.cos(k * np.log(r)))

        return cls(psi, dpsi, mode, (eps, 1.0))

    @classmethod
    def bump(cls, a, b, mode=1, amplitude=1.0):
        """amplitude * sin^2 of the log-radius rescaled onto [a, b]"""
        ta, tb = np.log(a), np.log(b)
        k = np.pi / (tb - ta)

        def psi(r):
            s = np.clip((np.log(r) - ta) * k, 0, np.pi)
            return amplitude * np.sin(s) ** 2

        def dpsi(r):
            s = (np.log(r) - ta) * k
            inside = (s > 0) & (s < np.pi)
            return np.where(inside, amplitude * k * np.sin(2 * s) / r, 0.0)

        return cls(psi, dpsi, mode, (a, b))

    def scaled(self, factor):
        return TestSection(lambda r: factor * self.psi(r),
                           lambda r: factor * self.dpsi(r),
                           self.mode, self.support)


def random_sections(n, rng, eps, count, modes=3, terms=3):
    """Random admissible test sections: sums of bumps and radial modes"""
    sections = []

    for _ in range(count):
        parts = []

        for _ in range(terms):
            mode = int(rng.integers(1, modes + 1))

            if rng.random() < 0.5:
                a, b = np.sort(np.exp(rng.uniform(np.log(eps), 0.0, 2)))
                parts.append(TestSection.bump(
                    a, b, mode, rng.standard_normal()))

            else:
                parts.append(TestSection.radial_mode(
                    n, eps, int(rng.integers(1, 4)), mode,
                    rng.standard_normal()))

        sections.append(parts)

    return sections


def _radial_integrals(section, n, pieces=64, order=8):
    """(int psi'^2 r^(n-1) dr, int psi^2 r^(n-3) dr) in t = log r"""
    a, b = section.support

    t, w = quadrature.composite_gauss(np.log(a), np.log(b), pieces, order)
    r = np.exp(t)

    psi = section.psi(r)
    dpsi = section.dpsi(r)

    return (float(np.sum(w * dpsi ** 2 * r ** n)),
            float(np.sum(w * psi ** 2 * r ** (n - 2))))


def _section_integrals(sections, n, pieces):
    """Cross terms only pair sections of the same link mode"""
    by_mode = {}

    for s in sections:
        by_mode.setdefault(s.mode, []).append(s)

    result = {}

    for mode, group in by_mode.items():
        lo = min(s.support[0] for s in group)
        hi = max(s.support[1] for s in group)

        if abs(sum(s.psi(1.0) for s in group if s.support[1] == 1.0)) > 1e-10:
            raise ConestabError('Test section does not vanish on the link')

        combined = TestSection(
            lambda r, g=group: sum(
                np.where((r >= s.support[0]) & (r <= s.support[1]),
                         s.psi(r), 0.0) for s in g),
            lambda r, g=group: sum(
                np.where((r >= s.support[0]) & (r <= s.support[1]),
                         s.dpsi(r), 0.0) for s in g),
            mode, (lo, hi))

        breaks = sorted(set(x for s in group for x in s.support))
        num = den = 0.0

        for a, b in zip(breaks[:-1], breaks[1:]):
            piece = TestSection(combined.psi, combined.dpsi, mode, (a, b))
            dn, dd = _radial_integrals(piece, n, pieces)
            num += dn
            den += dd

        result[mode] = num, den

    return result


def stability_quotient(spec, sections, spectrum=None, n=None, pieces=64):
    """Q(V, V) / int |V|^2 r^-2 for V = sum psi_s(r) V_(j_s).

    Each mode contributes int psi'^2 r^(n-1) + mu_j int psi^2 r^(n-3).
    """
    if isinstance(sections, TestSection):
        sections = [sections]

    spectrum = spectrum or scalar_link_spectrum(
        spec, max(s.mode for s in sections))
    n = n or spec.cone_dim

    num = den = 0.0

    for mode, (dn, dd) in _section_integrals(sections, n, pieces).items():
        num += dn + spectrum.mu(mode) * dd
        den += dd

    if den <= 0:
        raise ConestabError('Zero test section')

    return num / den


def quotient_sweep(spec, eps_values, mode=1):
    """Quotient of the first radial mode as the truncation shrinks"""
    n = spec.cone_dim
    spectrum = scalar_link_spectrum(spec, mode)

    return [(eps, stability_quotient(
        spec, TestSection.radial_mode(n, eps, 1, mode), spectrum))
        for eps in eps_values]


def separation_identity(spec, eps, coefficients, pieces=128):
    """Q of sum a_ij phi_i V_j against sum a_ij^2 (gamma_i + mu_j).

    Returns (quadrature value, closed form, relative residual).
    """
    coefficients = np.asarray(coefficients, dtype=float)
    n = spec.cone_dim

    spectrum = scalar_link_spectrum(spec, coefficients.shape[1])

    sections = [TestSection.radial_mode(n, eps, i + 1, j + 1, a)
                for (i, j), a in np.ndenumerate(coefficients) if a]

    integrals = _section_integrals(sections, n, pieces)

    quad = sum(dn + spectrum.mu(mode) * dd
               for mode, (dn, dd) in integrals.items())

    closed = sum(a ** 2 * (gamma(n, eps, i + 1) + spectrum.mu(j + 1))
                 for (i, j), a in np.ndenumerate(coefficients))

    return quad, closed, abs(quad - closed) / max(abs(closed), 1e-300)


def lawson_sweep(n_values):
    """Rows (n, k, l, mu1, d0, verdict) over all k + l = n - 1.

    mu1 = 1 - n from |A|^2 = n - 1; the spectrum of each link is checked
    against it.
    """
    rows = []

    for n in n_values:
        if not 2 <= n <= 12:
            raise ConestabError('Lawson sweep covers 2 <= n <= 12, got %s' % n)

        for k in range(1, n - 1):
            l = n - 1 - k

            mu1 = 1.0 - n
            computed = scalar_link_spectrum(catalog.lawson(k, l), 1).mu1

            if abs(computed - mu1) > 1e-9:
                raise ConestabError(
                    'mu1 of S^%d x S^%d is %r, expected %r' % (
                        k, l, computed, mu1))

            d = d0(n, mu1)

            rows.append({'n': n, 'k': k, 'l': l, 'mu1': mu1, 'd0': d,
                         'verdict': verdict_of(d)})

    return rows


def simons_bound_check(spec, samples, rng, radii=(0.1, 1.0, 10.0)):
    """Largest |A_C V| - r^-2 |A|^2 |V| over random points and normals"""
    worst = -np.inf

    for point in abstract.sample_points(spec, samples, rng):
        sff = abstract.second_fundamental_form(spec, point)

        for r in radii:
            cone = sff.scaled(1.0 / r, r)

            v = sff.normal @ rng.standard_normal(sff.normal.shape[1])

            excess = (np.linalg.norm(patch.simons_operator(cone, v)) -
                      sff.norm_sq / r ** 2 * np.linalg.norm(v))

            worst = max(worst, excess)

    return float(worst)
