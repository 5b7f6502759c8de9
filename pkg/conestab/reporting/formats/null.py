#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
from conestab.reporting.formats import base


class NullReporter(base.BaseReporter):
    """Discard artifacts.
    """
