#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Homogeneous holomorphic polynomials, their cones and the Jacobi
# field |grad u|^-2 grad u
#
import numpy as np
import scipy.linalg

from conestab import log
from conestab.error import ConestabError
from conestab.error import HypothesisViolation
from conestab.error import SingularPoint
from conestab.kernel import ode
from conestab.kernel.structure import ComplexStructure

SINGULAR_FLOOR = 1e-6
VIOLATION_FLOOR = 1e-4
NEWTON_TOL = 1e-14


class HolomorphicPolynomial(object):
    """Homogeneous polynomial f(z) = sum c_e z^e on C^N.

    Real points are laid out (x_1..x_N, y_1..y_N), z = x + i y.
    """
    def __init__(self, nvars, terms):
        nvars = int(nvars)

        if nvars < 1 or 2 * nvars > 16:
            raise ConestabError('Number of variables %s out of range' % nvars)

        self._terms = {}

        for exponents, coeff in dict(terms).items():
            exponents = tuple(int(e) for e in exponents)

            if len(exponents) != nvars or min(exponents) < 0:
                raise ConestabError('Bad exponent vector %s' % (exponents,))

            coeff = complex(coeff)

            if coeff:
                self._terms[exponents] = self._terms.get(exponents, 0) + coeff

        if not self._terms:
            raise ConestabError('Zero polynomial')

        degrees = set(sum(e) for e in self._terms)

        if len(degrees) != 1:
            raise ConestabError(
                'Polynomial is not homogeneous, degrees %s' % sorted(degrees))

        self.nvars = nvars
        self.degree = degrees.pop()
        self.structure = ComplexStructure(nvars)

    @classmethod
    def fermat(cls, nvars, degree):
        """z_1^d + ... + z_N^d"""
        return cls(nvars, dict(
            (tuple(degree if i == j else 0 for i in range(nvars)), 1)
            for j in range(nvars)))

    @classmethod
    def quadric(cls, nvars=3):
        return cls.fermat(nvars, 2)

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def complex_dim(self):
        """Complex dimension of the cone f = 0"""
        return self.nvars - 1

    @property
    def real_dim(self):
        return 2 * self.complex_dim

    def to_json(self):
        return {'nvars': self.nvars,
                'terms': [[list(e), c.real, c.imag]
                          for e, c in sorted(self._terms.items())]}

    @classmethod
    def from_json(cls, doc):
        try:
            return cls(doc['nvars'], dict(
                (tuple(e), complex(re, im)) for e, re, im in doc['terms']))

        except (KeyError, TypeError, ValueError) as exc:
            raise ConestabError('Malformed polynomial document: %s' % exc)

    def __eq__(self, other):
        return (isinstance(other, HolomorphicPolynomial) and
                self.nvars == other.nvars and self._terms == other._terms)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self._terms.items()))))

    def __repr__(self):
        return '%s(%d, %r)' % (self.__class__.__name__, self.nvars,
                               sorted(self._terms.items()))

    def as_complex(self, point):
        point = np.asarray(point)

        if np.iscomplexobj(point):
            return point

        return self.structure.to_complex(point)

    @staticmethod
    def _power(z, e):
        return z ** e if e else np.ones_like(z)

    def __call__(self, z):
        z = self.as_complex(z)
        total = np.zeros(z.shape[:-1], dtype=complex)

        for e, c in self._terms.items():
            term = c * np.ones(z.shape[:-1], dtype=complex)

            for j, ej in enumerate(e):
                term = term * self._power(z[..., j], ej)

            total = total + term

        return total

    def gradient(self, z):
        """Complex gradient (df/dz_1, ..., df/dz_N)"""
        z = self.as_complex(z)
        grad = np.zeros(z.shape, dtype=complex)

        for e, c in self._terms.items():
            for j, ej in enumerate(e):
                if not ej:
                    continue

                term = c * ej * np.ones(z.shape[:-1], dtype=complex)

                for i, ei in enumerate(e):
                    term = term * self._power(z[..., i], ei - (i == j))

                grad[..., j] += term

        return grad

    def hessian(self, z):
        """Complex Hessian d2f / dz_j dz_k"""
        z = self.as_complex(z)
        n = self.nvars
        hess = np.zeros(z.shape + (n,), dtype=complex)

        for e, c in self._terms.items():
            for j in range(n):
                for k in range(n):
                    lowered = list(e)
                    factor = lowered[j]
                    lowered[j] -= 1
                    factor *= lowered[k]
                    lowered[k] -= 1

                    if not factor:
                        continue

                    term = c * factor * np.ones(z.shape[:-1], dtype=complex)

                    for i, ei in enumerate(lowered):
                        term = term * self._power(z[..., i], ei)

                    hess[..., j, k] += term

        return hess

    def directional_derivative(self, z, direction):
        """d/dt f(z + t w) at t = 0 for a complex direction w"""
        return np.sum(self.gradient(z) * np.asarray(direction), axis=-1)

    def real_gradients(self, point):
        """(grad u, grad v) on R^2N by derivatives along the real axes"""
        z = self.as_complex(point)
        n = self.nvars

        partials = np.array([
            self.directional_derivative(z, d)
            for d in np.concatenate([np.eye(n), 1j * np.eye(n)])])

        return partials.real, partials.imag

    def real_jacobian(self, point):
        grad_u, grad_v = self.real_gradients(point)
        return np.vstack([grad_u, grad_v])

    def u(self, point):
        return self(point).real

    def v(self, point):
        return self(point).imag


def cauchy_riemann_check(f, point, method='analytic', h=1e-6):
    """|grad v - J grad u| at a point.

    'analytic' uses exact polynomial derivatives along the real axes,
    'fd' central differences of u and v.
    """
    x = np.asarray(point)

    if np.iscomplexobj(x):
        x = f.structure.to_real(x)

    x = np.asarray(x, dtype=float)

    if method == 'analytic':
        grad_u, grad_v = f.real_gradients(x)

    elif method == 'fd':
        basis = np.eye(len(x))
        grad_u = np.array([(f.u(x + h * e) - f.u(x - h * e)) / (2 * h)
                           for e in basis])
        grad_v = np.array([(f.v(x + h * e) - f.v(x - h * e)) / (2 * h)
                           for e in basis])

    else:
        raise ConestabError('Unknown derivative method "%s"' % method)

    return float(np.linalg.norm(grad_v - f.structure(grad_u)))


def retract_to_cone(f, point, tol=NEWTON_TOL, max_iterations=60):
    """Gauss-Newton projection of a point onto f = 0 within the unit sphere.

    Minimal-norm updates for (u, v) = 0 alternate with renormalization,
    which keeps the zero set by homogeneity. Returns None on failure.
    """
    x = np.asarray(point, dtype=float)
    x = x / np.linalg.norm(x)

    for iteration in range(max_iterations):
        value = f(x)

        if abs(value) <= tol:
            return x

        jac = f.real_jacobian(x)

        step = scipy.linalg.lstsq(
            jac, -np.array([value.real, value.imag]))[0]

        x = x + step

        norm = np.linalg.norm(x)

        if not np.isfinite(norm) or norm == 0:
            return

        x = x / norm

    if abs(f(x)) <= tol * 100:
        return x


def _axis_seeds(nvars):
    n = nvars
    seeds = list(np.eye(2 * n))

    for j in range(n):
        for k in range(j + 1, n):
            for w in (1, -1, 1j, -1j):
                z = np.zeros(n, dtype=complex)
                z[j], z[k] = 1, w
                seeds.append(np.concatenate([z.real, z.imag]))

    return seeds


class ProbeReport(object):
    def __init__(self, min_gradient, point, accepted, skipped):
        self.min_gradient = min_gradient
        self.point = point
        self.accepted = accepted
        self.skipped = skipped

    def to_json(self):
        return {'min_gradient': self.min_gradient,
                'point': list(self.point),
                'accepted': self.accepted,
                'skipped': self.skipped}


def isolated_singularity_probe(f, trials, rng, floor=VIOLATION_FLOOR):
    """Smallest |df| over sampled points of f^-1(0) on the unit sphere.

    Coordinate-axis seeds are tried first, then `trials` Gaussian seeds.
    Seeds whose retraction fails are skipped and counted. A minimum below
    `floor` means df vanishes somewhere besides the origin.
    """
    seeds = _axis_seeds(f.nvars) + list(
        rng.standard_normal((trials, 2 * f.nvars)))

    best = None
    accepted = skipped = 0

    for seed in seeds:
        x = retract_to_cone(f, seed)

        if x is None:
            skipped += 1
            continue

        accepted += 1

        grad = float(np.linalg.norm(f.gradient(x)))

        if best is None or grad < best[0]:
            best = grad, x

    if best is None:
        raise ConestabError('No seed reached the cone')

    report = ProbeReport(best[0], best[1], accepted, skipped)

    log.debug('isolated_singularity_probe: min |df| %.6g, %d points, '
              '%d skipped' % (best[0], accepted, skipped))

    if best[0] < floor:
        raise HypothesisViolation(
            'df vanishes on the cone near %s (|df| = %.3g)' % (
                tuple(best[1]), best[0]))

    return report


class JacobiFieldW(object):
    """The normal field W = |grad u|^-2 grad u on the cone f = 0.

    Its homogeneity is 1 - deg f; the strict-stability threshold
    homogeneity of an n-dimensional cone is (2 - n) / 2.
    """
    def __init__(self, f, floor=SINGULAR_FLOOR):
        self.f = f
        self.floor = floor

    @property
    def homogeneity(self):
        return 1 - self.f.degree

    @property
    def critical_homogeneity(self):
        return (2.0 - self.f.real_dim) / 2.0

    def __call__(self, point):
        point = np.asarray(point, dtype=float)
        grad_u, _ = self.f.real_gradients(point)

        norm_sq = float(np.dot(grad_u, grad_u))
        scale = np.linalg.norm(point) ** (self.f.degree - 1)

        if norm_sq < (self.floor * max(scale, 1e-300)) ** 2:
            raise SingularPoint(
                '|grad u| = %.3g below floor at %s' % (
                    np.sqrt(norm_sq), tuple(point)))

        return grad_u / norm_sq

    def norm_sq(self, point):
        """|W|^2 = |df|^-2"""
        return 1.0 / float(np.sum(np.abs(self.f.gradient(point)) ** 2))


def cone_tangent_basis(f, point):
    """Orthonormal basis of ker d(u, v), the tangent space of f = 0"""
    return scipy.linalg.null_space(f.real_jacobian(point))


def jacobi_field_W(f, point, tol=1e-8):
    """W at a cone point"""
    point = np.asarray(point, dtype=float)

    r = np.linalg.norm(point)

    if r == 0:
        raise SingularPoint('W is undefined at the vertex')

    if abs(f(point)) > tol * r ** f.degree:
        raise ConestabError('Point is not on the cone, |f| = %.3g' % abs(f(point)))

    return JacobiFieldW(f)(point)


class FlowReport(object):
    def __init__(self, times, points, u_residual, v_residual, rejected):
        self.times = times
        self.points = points
        self.u_residual = u_residual
        self.v_residual = v_residual
        self.rejected = rejected

    def to_json(self):
        return {'t_end': float(self.times[-1]),
                'samples': len(self.times),
                'u_residual': self.u_residual,
                'v_residual': self.v_residual,
                'rejected_steps': self.rejected}


def flow_level_sets(f, point, t_end, samples=11, tol=1e-8):
    """Integral curve c of W from a cone point.

    Along c, u(c(t)) = u(p) + t and v(c(t)) = v(p); the report records the
    largest deviation from both at `samples` equispaced times.
    """
    field = JacobiFieldW(f)

    p = np.asarray(point, dtype=float)

    record = np.linspace(0.0, t_end, samples).tolist() if samples > 1 else ()

    trajectory = ode.integrate(
        lambda t, y: field(y), p, t_end, tol=tol, record=record)

    u0, v0 = f.u(p), f.v(p)

    wanted = set(float(t) for t in record) | {float(t_end)}
    keep = [i for i, t in enumerate(trajectory.times) if t in wanted]

    times = trajectory.times[keep]
    points = trajectory.states[keep]

    values = f(points)

    u_res = float(np.max(np.abs(values.real - u0 - times)))
    v_res = float(np.max(np.abs(values.imag - v0)))

    log.debug('flow_level_sets: t_end %s, u residual %.3g, v residual %.3g' % (
        t_end, u_res, v_res))

    return FlowReport(times, points, u_res, v_res, trajectory.rejected)


def sup_constant_K(f, samples, rng, ascent_steps=50, starts=5):
    """K = sup over the link of |W|^2, by sampling and local ascent.

    |W|^2 = |df|^-2, so the ascent walks down g = |df|^2 along the link,
    retracting onto f = 0 after every step.
    """
    field = JacobiFieldW(f)
    points = []

    for seed in rng.standard_normal((samples, 2 * f.nvars)):
        x = retract_to_cone(f, seed)

        if x is not None:
            points.append((field.norm_sq(x), x))

    if not points:
        raise ConestabError('No sample reached the cone')

    points.sort(key=lambda item: -item[0])

    best = points[0][0]

    for value, x in points[:starts]:
        step = 0.1

        for _ in range(ascent_steps):
            z = f.as_complex(x)
            grad = f.gradient(z)

            # real gradient of g = sum |f_j|^2 is 2 (Re, Im) of dg/dzbar
            dg = np.einsum('j,jk->k', grad, np.conj(f.hessian(z)))
            direction = 2 * f.structure.to_real(dg)

            tangent = scipy.linalg.null_space(
                np.vstack([f.real_jacobian(x), x]))
            direction = tangent @ (tangent.T @ direction)

            if np.linalg.norm(direction) < 1e-14:
                break

            candidate = retract_to_cone(
                f, x - step * direction / np.linalg.norm(direction))

            if candidate is not None and field.norm_sq(candidate) > value:
                x, value = candidate, field.norm_sq(candidate)

            else:
                step /= 2

                if step < 1e-10:
                    break

        best = max(best, value)

    log.debug('sup_constant_K: %d samples -> K = %r' % (len(points), best))

    return best
