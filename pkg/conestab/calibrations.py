#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Calibration forms and calibrated-cone tests
#
import itertools
from math import factorial

import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.error import ConfigError
from conestab.kernel import forms
from conestab.kernel.structure import ComplexStructure
from conestab.links import abstract
from conestab.links import catalog

FRAME_TOL = 1e-8
REORTHO_TOL = 1e-6
COMASS_TOL = 1e-9

# 0-based index triples of the associative form on R^7
ASSOCIATIVE_TERMS = (
    ((4, 5, 6), 1),
    ((0, 1, 4), 1),
    ((2, 3, 4), -1),
    ((0, 2, 5), 1),
    ((1, 3, 5), 1),
    ((0, 3, 6), 1),
    ((1, 2, 6), -1),
)

# dx^1234 - dx^67(dx^12 - dx^34) + dx^57(dx^13 + dx^24) - dx^56(dx^14 - dx^23)
COASSOCIATIVE_TERMS = (
    ((0, 1, 2, 3), 1),
    ((0, 1, 5, 6), -1),
    ((2, 3, 5, 6), 1),
    ((0, 2, 4, 6), 1),
    ((1, 3, 4, 6), 1),
    ((0, 3, 4, 5), -1),
    ((1, 2, 4, 5), 1),
)


class CalibrationSpec(object):
    NAME = ''

    dim = 0
    degree = 0

    def params(self):
        return {}

    def to_json(self):
        doc = {'form': self.NAME}
        doc.update(self.params())
        return doc

    def __eq__(self, other):
        return type(self) is type(other) and self.params() == other.params()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.NAME, tuple(sorted(self.params().items()))))

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ', '.join(
            '%s=%r' % x for x in sorted(self.params().items())))

    def build(self):
        raise ConestabError(
            'Method not implemented at '
            '%s' % self.__class__.__name__)


class KahlerPower(CalibrationSpec):
    """omega^k / k! on C^n"""
    NAME = 'kahler-power'

    def __init__(self, n, k):
        n, k = int(n), int(k)

        if not 1 <= k <= n:
            raise ConestabError('Need 1 <= k <= n, got n=%d k=%d' % (n, k))

        self.n, self.k = n, k
        self.dim = 2 * n
        self.degree = 2 * k

    def params(self):
        return {'n': self.n, 'k': self.k}

    def build(self):
        omega = ComplexStructure(self.n).kahler_form()
        power = omega

        for _ in range(self.k - 1):
            power = forms.wedge(power, omega)

        return power / factorial(self.k)


class SpecialLagrangian(CalibrationSpec):
    """Re(e^(-i theta) Omega) on C^n"""
    NAME = 'special-lagrangian'

    def __init__(self, n, theta=0.0):
        self.n = int(n)
        self.theta = float(theta)
        self.dim = 2 * self.n
        self.degree = self.n

    def params(self):
        return {'n': self.n, 'theta': self.theta}

    def parts(self):
        """(Re, Im) of e^(-i theta) Omega"""
        re, im = ComplexStructure(self.n).holomorphic_volume()
        c, s = np.cos(self.theta), np.sin(self.theta)

        return re * c + im * s, im * c - re * s

    def build(self):
        return self.parts()[0]


class Associative(CalibrationSpec):
    """G2 3-form on R^7.

    `printed=True` gives the variant pairing dx^6 with dx^13 - dx^24,
    whose Hodge dual is not the coassociative 4-form.
    """
    NAME = 'associative'

    dim = 7
    degree = 3

    def __init__(self, printed=False):
        self.printed = bool(printed)

    def params(self):
        return {'printed': self.printed}

    def build(self):
        coeffs = dict(ASSOCIATIVE_TERMS)

        if self.printed:
            coeffs[(1, 3, 5)] = -coeffs[(1, 3, 5)]

        return forms.KForm(7, 3, coeffs)


class Coassociative(CalibrationSpec):
    """*omega_0 on R^7"""
    NAME = 'coassociative'

    dim = 7
    degree = 4

    def build(self):
        return forms.hodge_star(Associative().build())


CALIBRATIONS = dict(
    (cls.NAME, cls) for cls in (
        KahlerPower, SpecialLagrangian, Associative, Coassociative))


def from_json(doc):
    try:
        params = dict(doc)
        cls = CALIBRATIONS[params.pop('form')]

    except (TypeError, ValueError, KeyError):
        raise ConfigError(
            'Calibration must be one of: %s' % ', '.join(sorted(CALIBRATIONS)))

    try:
        return cls(**params)

    except TypeError as exc:
        raise ConfigError('Bad calibration parameters: %s' % exc)


def build_calibration(spec):
    return spec.build()


def printed_coassociative_form():
    return forms.KForm(7, 4, dict(COASSOCIATIVE_TERMS))


def random_frames(dim, k, count, rng):
    """Orthonormal k-frames from QR of Gaussian matrices, shape (count, dim, k)"""
    q, r = np.linalg.qr(rng.standard_normal((count, dim, k)))

    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs[signs == 0] = 1.0

    return q * signs[:, None, :]


def _orthonormalize(frame):
    q, r = np.linalg.qr(frame)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def _form_gradient(form, frame):
    """d form(E) / dE as an (m, k) array; form is multilinear in columns"""
    m, k = frame.shape

    probes = np.repeat(frame[None], m * k, axis=0)

    for a in range(m):
        for i in range(k):
            probes[a * k + i, :, i] = np.eye(m)[a]

    return forms.evaluate_form(form, probes).reshape(m, k)


def _ascend(form, frame, steps):
    value = abs(float(forms.evaluate_form(form, frame)))
    step = 0.5

    for _ in range(steps):
        sign = np.sign(forms.evaluate_form(form, frame)) or 1.0
        grad = sign * _form_gradient(form, frame)

        # projection onto the tangent space of the Stiefel manifold
        sym = frame.T @ grad
        grad = grad - frame @ (sym + sym.T) / 2

        if np.linalg.norm(grad) < 1e-14:
            break

        candidate = _orthonormalize(frame + step * grad)
        cvalue = abs(float(forms.evaluate_form(form, candidate)))

        if cvalue > value:
            frame, value = candidate, cvalue

        else:
            step /= 2

            if step < 1e-12:
                break

    return value, frame


def comass_sample(form, trials, rng, ascent_steps=30, starts=4, batch=4096):
    """Lower estimate of the comass: max |form| over random orthonormal
    frames followed by projected-gradient ascent from the best ones.

    Returns (value, frame).
    """
    if trials < 1:
        raise ConestabError('Need at least one trial')

    best = []

    for start in range(0, trials, batch):
        count = min(batch, trials - start)
        frames = random_frames(form.dim, form.degree, count, rng)
        values = np.abs(forms.evaluate_form(form, frames))

        for i in np.argsort(values)[::-1][:starts]:
            best.append((float(values[i]), frames[i]))

    best.sort(key=lambda item: -item[0])

    value, frame = best[0]

    for _, start_frame in best[:starts]:
        v, f = _ascend(form, start_frame, ascent_steps)

        if v > value:
            value, frame = v, f

    log.debug('comass_sample: %d trials -> %r' % (trials, value))

    return value, frame


def check_frame(frame):
    """Orthonormal (m, k) frame; slightly perturbed frames are
    re-orthonormalized once"""
    frame = np.asarray(frame, dtype=float)

    residual = np.max(np.abs(frame.T @ frame - np.eye(frame.shape[1])))

    if residual <= FRAME_TOL:
        return frame

    if residual > REORTHO_TOL:
        raise ConestabError(
            'Frame is not orthonormal, residual %.3g' % residual)

    frame = _orthonormalize(frame)

    residual = np.max(np.abs(frame.T @ frame - np.eye(frame.shape[1])))

    if residual > FRAME_TOL:
        raise ConestabError(
            'Frame is not orthonormal, residual %.3g' % residual)

    return frame


def is_calibrated_at(form, frame, orientation=1):
    """|orientation * form(frame) - 1|"""
    frame = check_frame(frame)

    return abs(orientation * float(forms.evaluate_form(form, frame)) - 1.0)


def coassociative_residual(frame):
    """max |omega_0(t_i, t_j, t_k)| over triples of a 4-frame"""
    frame = check_frame(frame)

    if frame.shape != (7, 4):
        raise ConestabError('Coassociative test needs 4 vectors in R^7')

    omega = Associative().build()

    return max(abs(float(forms.evaluate_form(omega, frame[:, list(t)])))
               for t in itertools.combinations(range(4), 3))


def special_lagrangian_residual(frame, theta=0.0):
    """(max |omega(t_i, t_j)|, |Im(e^(-i theta) Omega)(frame)|)"""
    frame = check_frame(frame)

    m, n = frame.shape

    if m != 2 * n:
        raise ConestabError('Need n vectors in R^2n, got %s' % (frame.shape,))

    omega = ComplexStructure(n).kahler_form()

    lagrangian = max([abs(float(forms.evaluate_form(omega, frame[:, [i, j]])))
                      for i, j in itertools.combinations(range(n), 2)] or [0.0])

    _, im = SpecialLagrangian(n, theta).parts()

    return lagrangian, abs(float(forms.evaluate_form(im, frame)))


def detect_sl_phase(frame):
    """(theta in [0, pi), orientation) with Omega(frame) = orientation e^(i theta)"""
    frame = check_frame(frame)

    n = frame.shape[1]

    re, im = ComplexStructure(n).holomorphic_volume()
    z = complex(forms.evaluate_form(re, frame), forms.evaluate_form(im, frame))

    theta = np.angle(z) % np.pi

    if theta > np.pi - 1e-9:
        theta = 0.0

    sign = 1 if (z * np.exp(-1j * theta)).real >= 0 else -1

    return float(theta), sign


def kahler_residual(frame, k=None):
    """|omega^k / k!(frame) - 1| for a 2k-frame in C^n"""
    frame = check_frame(frame)

    m, d = frame.shape

    if m % 2 or d % 2:
        raise ConestabError('Kahler test needs an even frame in R^2n')

    form = KahlerPower(m // 2, k or d // 2).build()

    return abs(float(forms.evaluate_form(form, frame)) - 1.0)


def wirtinger_frame(n, k):
    """e_1, Je_1, ..., e_k, Je_k: a complex k-plane of C^n"""
    frame = np.zeros((2 * n, 2 * k))

    for j in range(k):
        frame[j, 2 * j] = 1.0
        frame[n + j, 2 * j + 1] = 1.0

    return frame


def asd_form_of_normal(vector, frame):
    """alpha_V = (i_V omega_0) restricted to the 4-frame, in its coframe"""
    frame = check_frame(frame)
    vector = np.asarray(vector, dtype=float)

    scale = max(np.linalg.norm(vector), 1.0)

    if np.max(np.abs(frame.T @ vector)) > FRAME_TOL * scale:
        raise ConestabError('Vector is not normal to the frame')

    omega = Associative().build()

    coeffs = {}

    for i, j in itertools.combinations(range(4), 2):
        coeffs[(i, j)] = float(forms.evaluate_form(
            omega, np.column_stack([vector, frame[:, i], frame[:, j]])))

    return forms.KForm(4, 2, dict((k, v) for k, v in coeffs.items() if v))


def asd_residual(alpha, orientation=1):
    """|*alpha + alpha|"""
    return (forms.hodge_star(alpha, orientation) + alpha).norm()


class CalibratedTestReport(object):
    def __init__(self, cone, form, samples, max_restriction_residual,
                 max_value_residual, orientation_sign, seed=0, theta=None,
                 compatible=True):
        self.cone = cone
        self.form = form
        self.samples = samples
        self.max_restriction_residual = max_restriction_residual
        self.max_value_residual = max_value_residual
        self.orientation_sign = orientation_sign
        self.seed = seed
        self.theta = theta
        self.compatible = compatible

    def passed(self, tol):
        return (self.compatible and
                self.max_restriction_residual <= tol and
                self.max_value_residual <= tol)

    def to_json(self):
        doc = {'cone': catalog.to_json(self.cone),
               'form': self.form.to_json(),
               'samples': self.samples,
               'max_restriction_residual': self.max_restriction_residual,
               'max_value_residual': self.max_value_residual,
               'orientation_sign': self.orientation_sign,
               'seed': self.seed,
               'compatible': self.compatible}

        if self.theta is not None:
            doc['theta'] = self.theta

        return doc


def _complex_line_residual(frame):
    """Distance of J T from T"""
    n = frame.shape[0] // 2
    jt = ComplexStructure(n)(frame.T).T
    return float(np.max(np.abs(jt - frame @ (frame.T @ jt))))


def calibration_test(spec, calibration, samples, rng, seed=0):
    """Evaluate a calibration on cone tangent frames (sigma, link frame).

    The orientation is fixed by the first sample and kept for all others;
    for special Lagrangian forms the phase is detected there as well.
    """
    n = spec.cone_dim

    if calibration.dim != spec.ambient_dim or calibration.degree != n:
        log.info('calibration_test: %r does not act on %d-planes in R^%d' % (
            calibration, n, spec.ambient_dim))

        return CalibratedTestReport(spec, calibration, 0, None, None, 0,
                                    seed, compatible=False)

    theta = None

    if isinstance(calibration, SpecialLagrangian):
        frame = abstract.cone_tangent_frame(
            spec, 1.0, abstract.sample_points(spec, 1, rng)[0])

        theta, sign = detect_sl_phase(frame)
        calibration = SpecialLagrangian(calibration.n, theta)

        log.info('calibration_test: detected phase %r, orientation %d' % (
            theta, sign))

    form = calibration.build()

    sign = None
    restriction = value = 0.0

    for point in abstract.sample_points(spec, samples, rng):
        frame = abstract.cone_tangent_frame(spec, 1.0, point)

        if sign is None:
            sign = 1 if forms.evaluate_form(form, frame) >= 0 else -1

        value = max(value, is_calibrated_at(form, frame, sign))

        if isinstance(calibration, Coassociative):
            restriction = max(restriction, coassociative_residual(frame))

        elif isinstance(calibration, SpecialLagrangian):
            restriction = max(restriction, max(
                special_lagrangian_residual(frame, theta)))

        elif isinstance(calibration, KahlerPower):
            restriction = max(restriction, _complex_line_residual(frame))

    log.info('calibration_test: %s vs %r -> %.3g / %.3g' % (
        spec, calibration, restriction, value))

    return CalibratedTestReport(spec, calibration, samples, restriction,
                                value, sign, seed, theta)
