#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Exterior algebra of constant-coefficient forms on R^m
#
import itertools

import numpy as np

from conestab.error import ConestabError

MAX_DIM = 16


def permutation_sign(seq):
    """Sign of the permutation sorting `seq`, 0 on repeated entries"""
    seq = list(seq)

    if len(set(seq)) != len(seq):
        return 0

    sign = 1

    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign

    return sign


def canonical(indices):
    """Return (sorted index tuple, sign) or (None, 0) if indices repeat"""
    sign = permutation_sign(indices)

    if not sign:
        return None, 0

    return tuple(sorted(indices)), sign


def complement(indices, dim):
    return tuple(i for i in range(dim) if i not in indices)


def star_table(dim, degree):
    """Hodge star on basis forms of R^dim with the Euclidean metric.

    Yields (I, J, sign) meaning *dx^I = sign dx^J.
    """
    for idx in itertools.combinations(range(dim), degree):
        comp = complement(idx, dim)
        yield idx, comp, permutation_sign(idx + comp)


def d_table(dim, degree):
    """Exterior derivative bookkeeping on coordinate forms.

    Yields (I, j, J, sign) meaning dx^j ^ dx^I = sign dx^J.
    """
    for idx in itertools.combinations(range(dim), degree):
        for j in range(dim):
            if j in idx:
                continue

            target, sign = canonical((j,) + idx)
            yield idx, j, target, sign


class KForm(object):
    """Alternating k-form on R^m with constant coefficients.

    Coefficients are kept sparsely, keyed by strictly increasing 0-based
    index tuples. Zero coefficients are never stored.
    """
    def __init__(self, dim, degree, coeffs=None):
        if not 0 < dim <= MAX_DIM:
            raise ConestabError('Ambient dimension %s out of range' % dim)

        if not 0 <= degree <= dim:
            raise ConestabError(
                'Degree %s impossible in dimension %s' % (degree, dim))

        self._dim = dim
        self._degree = degree
        self._coeffs = {}

        for indices, value in (coeffs or {}).items():
            self._accumulate(tuple(indices), value)

    def _accumulate(self, indices, value):
        if len(indices) != self._degree:
            raise ConestabError(
                'Index %s does not match degree %s' % (indices, self._degree))

        if any(i < 0 or i >= self._dim for i in indices):
            raise ConestabError(
                'Index %s outside dimension %s' % (indices, self._dim))

        key, sign = canonical(indices)

        if not sign:
            return

        value = self._coeffs.get(key, 0) + sign * value

        if value:
            self._coeffs[key] = value

        else:
            self._coeffs.pop(key, None)

    @property
    def dim(self):
        return self._dim

    @property
    def degree(self):
        return self._degree

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, indices):
        key, sign = canonical(tuple(indices))

        if not sign:
            return 0

        return sign * self._coeffs.get(key, 0)

    def __eq__(self, other):
        return (isinstance(other, KForm) and
                self._dim == other._dim and
                self._degree == other._degree and
                self._coeffs == other._coeffs)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._dim, self._degree,
                     tuple(sorted(self._coeffs.items()))))

    def _check_compatible(self, other):
        if not isinstance(other, KForm):
            raise ConestabError('KForm expected, got %r' % (other,))

        if self._dim != other._dim:
            raise ConestabError(
                'Dimension mismatch: %s vs %s' % (self._dim, other._dim))

    def __add__(self, other):
        self._check_compatible(other)

        if self._degree != other._degree:
            raise ConestabError('Cannot add forms of different degree')

        result = KForm(self._dim, self._degree, self._coeffs)

        for key, value in other._coeffs.items():
            result._accumulate(key, value)

        return result

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, KForm):
            return wedge(self, scalar)

        return KForm(self._dim, self._degree,
                     dict((k, v * scalar) for k, v in self._coeffs.items()))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return KForm(self._dim, self._degree,
                     dict((k, v / scalar) for k, v in self._coeffs.items()))

    def __xor__(self, other):
        return wedge(self, other)

    def max_abs_difference(self, other):
        self._check_compatible(other)

        keys = set(self._coeffs) | set(other._coeffs)

        return max([abs(self._coeffs.get(k, 0) - other._coeffs.get(k, 0))
                    for k in keys] or [0.0])

    def norm(self):
        """Euclidean norm, basis forms dx^I orthonormal"""
        return float(np.sqrt(sum(abs(v) ** 2 for v in self._coeffs.values())))

    def __repr__(self):
        terms = ['%+g dx^%s' % (v, ''.join(str(i + 1) for i in k))
                 if max(k or (0,)) < 9 else
                 '%+g dx^%s' % (v, k) for k, v in self.items()]

        return 'KForm(%d, %d, %s)' % (
            self._dim, self._degree, ' '.join(terms) or '0')


def dx(dim, *labels):
    """Basis form dx^{i j ...} written with 1-based axis labels"""
    return KForm(dim, len(labels), {tuple(i - 1 for i in labels): 1})


def wedge(a, b):
    a._check_compatible(b)

    if a.degree + b.degree > a.dim:
        raise ConestabError(
            'Degree %d + %d exceeds dimension %d' % (a.degree, b.degree, a.dim))

    result = KForm(a.dim, a.degree + b.degree)

    for ka, va in a._coeffs.items():
        for kb, vb in b._coeffs.items():
            result._accumulate(ka + kb, va * vb)

    return result


def hodge_star(a, orientation=1):
    """Euclidean Hodge star; `orientation` -1 reverses the volume form"""
    if orientation not in (1, -1):
        raise ConestabError('Orientation must be +1 or -1')

    result = KForm(a.dim, a.dim - a.degree)

    for key, value in a._coeffs.items():
        comp = complement(key, a.dim)
        result._accumulate(
            comp, orientation * permutation_sign(key + comp) * value)

    return result


def interior_product(vector, a):
    """Contraction of the first slot of `a` with `vector`"""
    vector = np.asarray(vector)

    if vector.shape != (a.dim,):
        raise ConestabError(
            'Vector of dimension %d expected' % a.dim)

    if a.degree == 0:
        return KForm(a.dim, 0)

    result = KForm(a.dim, a.degree - 1)

    for key, value in a._coeffs.items():
        for pos, i in enumerate(key):
            if vector[i]:
                result._accumulate(
                    key[:pos] + key[pos + 1:],
                    (-1) ** pos * vector[i] * value)

    return result


def evaluate_form(a, frame):
    """Evaluate `a` on k vectors.

    `frame` is a sequence of k vectors, or an array whose last two axes
    are (m, k) holding the vectors as columns; leading axes batch.
    """
    if isinstance(frame, (list, tuple)):
        frame = frame_columns(frame) if frame else np.zeros((a.dim, 0))

    frame = np.asarray(frame)

    if frame.shape[-2:] != (a.dim, a.degree):
        raise ConestabError(
            'Frame of %d vectors in R^%d expected, got shape %s' % (
                a.degree, a.dim, frame.shape))

    batch = frame.shape[:-2]
    total = np.zeros(batch, dtype=np.result_type(frame, float))

    if a.degree == 0:
        return total + a[()]

    for key, value in a._coeffs.items():
        total = total + value * np.linalg.det(frame[..., list(key), :])

    return total


def frame_columns(vectors):
    """Stack a sequence of vectors as the columns of an (m, k) array"""
    return np.stack([np.asarray(v) for v in vectors], axis=-1)
