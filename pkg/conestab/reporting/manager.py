#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Run artifact output
#
from conestab import log
from conestab.error import ConfigError
from conestab.reporting.formats import csvfile
from conestab.reporting.formats import jsonfile
from conestab.reporting.formats import null


class ReportingManager(object):
    """Route run artifacts to the configured writers.

    Each command configures one or more reporters (JSON documents, CSV
    tables) pointing at its output directory, then hands every artifact
    to `update_report`. Artifacts carry no timestamps or host data, so
    the same run configuration reproduces them byte for byte.
    """

    REPORTERS = {
        'null': null.NullReporter,
        'json': jsonfile.JsonReporter,
        'csv': csvfile.CsvReporter,
    }

    _reporters = {}

    @classmethod
    def configure(cls, fmt, *args):
        try:
            reporter = cls.REPORTERS[fmt]

        except KeyError:
            raise ConfigError('Unsupported reporting format: %s' % fmt)

        cls._reporters[fmt] = reporter(*args)

        log.info('Using "%s" reporting method with '
                 'params %s' % (cls._reporters[fmt], ', '.join(args)))

    @classmethod
    def reset(cls):
        cls._reporters = {}

    @classmethod
    def reporter(cls, fmt):
        return cls._reporters.get(fmt)

    @classmethod
    def update_report(cls, name, **kwargs):
        for fmt in sorted(cls._reporters):
            reporter = cls._reporters[fmt]
            reporter.update_report(name, **kwargs)
            reporter.flush()
