#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Search path for run configuration files
#
import os
import sys

if sys.platform[:3] == 'win':
    config = [
        os.path.join(os.environ.get('APPDATA', ''), 'Conestab', 'Conf'),
        os.path.join(os.environ.get('PROGRAMFILES', ''), 'Conestab', 'Conf'),
        os.path.join(os.path.split(__file__)[0], 'conf')
    ]

else:
    config = [
        os.path.join(os.environ.get('HOME', ''), '.conestab', 'conf'),
        os.path.join(sys.prefix, 'conestab', 'conf'),
        os.path.join(sys.prefix, 'share', 'conestab', 'conf'),
        os.path.join(os.path.split(__file__)[0], 'conf')
    ]

output = os.path.curdir
