#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import sys

import numpy
import scipy

import conestab

TITLE = """\
Cone stability workbench version %s
Using foundation libraries: numpy %s, scipy %s.
Python interpreter: %s
""" % (conestab.__version__, numpy.__version__, scipy.__version__,
       sys.version)

VERSION = 'conestab %s (numpy %s, scipy %s)' % (
    conestab.__version__, numpy.__version__, scipy.__version__)


def format_float(value):
    """Render a float with 17 significant digits"""
    return '%.17g' % value


def make_rng(seed, stream=0):
    """Return the `stream`-th independent generator derived from `seed`.

    Streams are spawned in index order, so a given (seed, stream) pair
    always yields the same sequence.
    """
    seq = numpy.random.SeedSequence(seed)
    return numpy.random.default_rng(seq.spawn(stream + 1)[stream])

