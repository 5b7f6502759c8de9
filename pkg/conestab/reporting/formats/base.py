#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import os
import tempfile
from functools import wraps

import numpy as np

from conestab import log
from conestab.error import ConfigError


def to_base_types(item):
    """Turn numpy scalars, arrays and tuples into plain Python values"""
    if isinstance(item, dict):
        return dict((str(k), to_base_types(v)) for k, v in item.items())

    if isinstance(item, (list, tuple)):
        return [to_base_types(x) for x in item]

    if isinstance(item, np.ndarray):
        return to_base_types(item.tolist())

    if isinstance(item, (bool, np.bool_)):
        return bool(item)

    if isinstance(item, np.integer):
        return int(item)

    if isinstance(item, (complex, np.complexfloating)):
        return [float(item.real), float(item.imag)]

    if isinstance(item, np.floating):
        return float(item)

    return item


def ensure_base_types(f):
    """Convert decorated function's kwargs to Python types"""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        return f(*args, **dict(
            (k, to_base_types(v)) for k, v in kwargs.items()))

    return decorated_function


class BaseReporter(object):
    """Collect run artifacts and write them out on flush.
    """
    EXTENSION = ''

    def __init__(self, *args):
        self._artifacts = []

    def update_report(self, name, **kwargs):
        """Queue artifact `name`.

        Reporters pick the keyword arguments they can render and ignore
        the rest.
        """

    def flush(self):
        """Write queued artifacts, forget them upon success.
        """

    def __str__(self):
        return self.__class__.__name__


class FileReporter(BaseReporter):
    """Reporter writing one file per artifact into a directory"""

    def __init__(self, *args):
        BaseReporter.__init__(self, *args)

        if not args or not args[0]:
            raise ConfigError(
                'Missing %s parameter(s). Expected: '
                '<method>:<output-dir>' % self.__class__.__name__)

        self._output_dir = args[0]

        try:
            if not os.path.exists(self._output_dir):
                os.makedirs(self._output_dir)

        except OSError as exc:
            raise ConfigError(
                'Failed to create output directory %s: '
                '%s' % (self._output_dir, exc))

        log.debug('Initialized %s into %s' % (
            self.__class__.__name__, self._output_dir))

    @property
    def output_dir(self):
        return self._output_dir

    def path_of(self, name):
        return os.path.join(self._output_dir, '%s.%s' % (name, self.EXTENSION))

    def render(self, **kwargs):
        raise NotImplementedError()

    def flush(self):
        artifacts, self._artifacts = self._artifacts, []

        for name, kwargs in artifacts:
            dump_path = self.path_of(name)

            log.debug('Dumping %s artifact to %s' % (self.EXTENSION, dump_path))

            text = self.render(**kwargs)

            # same directory, so that rename stays on one file system
            with tempfile.NamedTemporaryFile(
                    dir=self._output_dir, delete=False) as fl:
                fl.write(text.encode('utf-8'))

            os.replace(fl.name, dump_path)
