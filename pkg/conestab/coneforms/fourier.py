#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Fourier-exact form calculus on flat tori
#
import itertools

import numpy as np

from conestab import log
from conestab.error import ConestabError
from conestab.error import ConfigError
from conestab.kernel import forms

DEFAULT_CUTOFF = 8


class FourierTorus(object):
    """Flat T^d = R^d / 2 pi Z^d with forms in truncated Fourier series.

    A p-form is a complex array of shape (M, C(d, p)): row m holds the
    coefficients of e^(i k_m . theta) dtheta^I, components ordered as
    itertools.combinations. Wavevectors run over |k_i| <= cutoff.
    d is i k ^ and the codifferential its conjugate transpose, so
    adjointness holds block by block.
    """
    TYPE = 'fourier-torus'

    def __init__(self, d, cutoff=DEFAULT_CUTOFF):
        d, cutoff = int(d), int(cutoff)

        if d not in (1, 2, 3):
            raise ConestabError('Fourier tori of dimension 1, 2 or 3 only')

        if cutoff < 1:
            raise ConestabError('Mode cutoff must be positive')

        self.d = d
        self.cutoff = cutoff

        axis = np.arange(-cutoff, cutoff + 1)
        self.wavevectors = np.array(list(itertools.product(axis, repeat=d)))

        self._index = dict(
            (tuple(k), m) for m, k in enumerate(self.wavevectors))

        self._d_blocks = dict((p, self._build_d(p)) for p in range(d))
        self._star = dict((p, self._build_star(p)) for p in range(d + 1))

        log.debug('FourierTorus: d %d, %d modes' % (d, len(self.wavevectors)))

    def params(self):
        return {'d': self.d, 'cutoff': self.cutoff}

    def to_json(self):
        doc = {'type': self.TYPE}
        doc.update(self.params())
        return doc

    def __eq__(self, other):
        return type(self) is type(other) and self.params() == other.params()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.TYPE, self.d, self.cutoff))

    def __repr__(self):
        return '%s(d=%d, cutoff=%d)' % (
            self.__class__.__name__, self.d, self.cutoff)

    @property
    def modes(self):
        return len(self.wavevectors)

    def components(self, p):
        return list(itertools.combinations(range(self.d), p))

    def mode_index(self, k):
        try:
            return self._index[tuple(int(x) for x in k)]

        except KeyError:
            raise ConestabError('Wavevector %s beyond the mode cutoff' % (k,))

    def zeros(self, p):
        return np.zeros((self.modes, len(self.components(p))), dtype=complex)

    def _build_d(self, p):
        src = dict((c, i) for i, c in enumerate(self.components(p)))
        dst = dict((c, i) for i, c in enumerate(self.components(p + 1)))

        blocks = np.zeros((self.modes, len(dst), len(src)), dtype=complex)

        for idx, j, target, sign in forms.d_table(self.d, p):
            blocks[:, dst[target], src[idx]] += sign * 1j * self.wavevectors[:, j]

        return blocks

    def _build_star(self, p):
        src = dict((c, i) for i, c in enumerate(self.components(p)))
        dst = dict((c, i) for i, c in enumerate(self.components(self.d - p)))

        s = np.zeros((len(dst), len(src)))

        for idx, comp, sign in forms.star_table(self.d, p):
            s[dst[comp], src[idx]] = sign

        return s

    def d_blocks(self, p):
        """Per-mode matrices of d on p-forms, shape (M, C(d,p+1), C(d,p))"""
        if not 0 <= p < self.d:
            raise ConestabError('d on %d-forms of T^%d is zero' % (p, self.d))

        return self._d_blocks[p]

    def exterior_derivative(self, coeffs, p):
        if p == self.d:
            return np.zeros((self.modes, 0), dtype=complex)

        return np.einsum('mji,mi->mj', self.d_blocks(p), coeffs)

    def codifferential(self, coeffs, p):
        """Adjoint of d on p-forms"""
        if p == 0:
            return np.zeros((self.modes, 0), dtype=complex)

        blocks = self.d_blocks(p - 1)

        return np.einsum('mji,mj->mi', np.conj(blocks), coeffs)

    def star(self, coeffs, p):
        return coeffs @ self._star[p].T

    def star_matrix(self, p):
        return self._star[p]

    def hodge_blocks(self, p):
        """dd* + d*d on p-forms, per mode"""
        size = len(self.components(p))
        total = np.zeros((self.modes, size, size), dtype=complex)

        if p < self.d:
            b = self.d_blocks(p)
            total += np.einsum('mji,mjk->mik', np.conj(b), b)

        if p > 0:
            b = self.d_blocks(p - 1)
            total += np.einsum('mij,mkj->mik', b, np.conj(b))

        return total

    def hodge_laplacian(self, coeffs, p):
        return np.einsum('mij,mj->mi', self.hodge_blocks(p), coeffs)

    def hodge_spectrum(self, p):
        """All eigenvalues of the Hodge Laplacian on p-forms, ascending"""
        return np.sort(np.linalg.eigvalsh(self.hodge_blocks(p)).ravel())

    def harmonic_forms(self, p):
        """Constant forms dtheta^I, one per component"""
        zero = self.mode_index(np.zeros(self.d))
        basis = []

        for i in range(len(self.components(p))):
            h = self.zeros(p)
            h[zero, i] = 1.0
            basis.append(h)

        return basis

    def inner(self, a, b):
        """L2 pairing int <a, b> dtheta (complex, conjugate-linear in b)"""
        return (2 * np.pi) ** self.d * complex(np.sum(a * np.conj(b)))

    def norm(self, a):
        return float(np.sqrt(abs(self.inner(a, a))))

    def reality_defect(self, coeffs):
        """max |c_k - conj(c_-k)|; zero for real forms"""
        flipped = coeffs[[self.mode_index(-k) for k in self.wavevectors]]
        return float(np.max(np.abs(coeffs - np.conj(flipped)), initial=0.0))

    def random_form(self, p, rng, modes=None, real=True):
        """Random p-form supported on |k_i| <= modes"""
        modes = self.cutoff if modes is None else min(modes, self.cutoff)

        coeffs = (rng.standard_normal((self.modes, len(self.components(p)))) +
                  1j * rng.standard_normal((self.modes, len(self.components(p)))))

        coeffs[np.max(np.abs(self.wavevectors), axis=1) > modes] = 0.0

        if real:
            flipped = coeffs[[self.mode_index(-k) for k in self.wavevectors]]
            coeffs = (coeffs + np.conj(flipped)) / 2

        return coeffs

    def synthesize(self, coeffs, points):
        """Real values at angles `points` (N, d); returns (N, C(d, p))"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        phases = np.exp(1j * points @ self.wavevectors.T)

        return (phases @ coeffs).real

    def synthesize_grid(self, coeffs, count):
        """Values on the uniform grid of `count` points per axis.

        Returns an array of shape (count,) * d + (C(d, p),).
        """
        if count < 2 * self.cutoff + 1:
            raise ConestabError(
                'Grid of %d points aliases modes up to %d' % (count, self.cutoff))

        spectrum = np.zeros((count,) * self.d + (coeffs.shape[1],),
                            dtype=complex)

        for k, row in zip(self.wavevectors, coeffs):
            spectrum[tuple(k % count)] += row

        axes = tuple(range(self.d))

        return (np.fft.ifftn(spectrum, axes=axes) * count ** self.d).real


class SphereS1(FourierTorus):
    """The unit circle as the one-dimensional Fourier link"""
    TYPE = 'sphere-s1'

    def __init__(self, cutoff=DEFAULT_CUTOFF):
        FourierTorus.__init__(self, 1, cutoff)

    def params(self):
        return {'cutoff': self.cutoff}


DISCRETE_LINKS = {
    FourierTorus.TYPE: FourierTorus,
    SphereS1.TYPE: SphereS1,
}


def from_json(doc):
    try:
        params = dict(doc)
        cls = DISCRETE_LINKS[params.pop('type')]

    except (TypeError, ValueError, KeyError):
        raise ConfigError(
            'Discrete link must be one of: %s' % ', '.join(
                sorted(DISCRETE_LINKS)))

    try:
        return cls(**params)

    except TypeError as exc:
        raise ConfigError('Bad discrete link parameters: %s' % exc)
