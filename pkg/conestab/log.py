#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Pluggable log sinks. Library code logs through the module-level
# error/info/debug functions; commands pick the sink with set_logger().
#
import logging
import sys
from logging import handlers

from conestab.error import ConestabError

LOG_DEBUG = 0
LOG_INFO = 1
LOG_ERROR = 2

SIZE_UNITS = {'k': 1 << 10, 'm': 1 << 20, 'g': 1 << 30}

BACKUP_COUNT = 10


def parse_size(text):
    """'<N>k|m|g' -> bytes"""
    try:
        return int(text[:-1]) * SIZE_UNITS[text[-1].lower()]

    except (IndexError, KeyError, ValueError):
        raise ConestabError(
            'Bad log rotation size "%s", use <N>k, <N>m or <N>g' % text)


class AbstractLogger(object):
    """Callable sink bound to a `logging.Logger` named after the program"""
    fmt = '%(message)s'
    datefmt = None

    def __init__(self, prog_id, *priv):
        self._prog_id = prog_id
        self._logger = logging.getLogger('conestab.%s' % prog_id)
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False

        for handler in list(self._logger.handlers):
            self._logger.removeHandler(handler)

        handler = self.make_handler(*priv)
        handler.setFormatter(logging.Formatter(self.fmt, self.datefmt))

        self._logger.addHandler(handler)

    def make_handler(self, *priv):
        raise ConestabError(
            'Method not implemented at %s' % self.__class__.__name__)

    def __call__(self, s):
        self._logger.debug(s)


class FileLogger(AbstractLogger):
    """Log to a file, optionally rotated at a size limit"""
    fmt = '%(asctime)s %(message)s'
    datefmt = '%Y-%m-%dT%H:%M:%S'

    def make_handler(self, *priv):
        if not priv or not priv[0]:
            raise ConestabError('File logger needs a file name')

        path = priv[0]
        maxsize = parse_size(priv[1]) if len(priv) > 1 and priv[1] else 0

        try:
            if maxsize:
                return handlers.RotatingFileHandler(
                    path, maxBytes=maxsize, backupCount=BACKUP_COUNT)

            return handlers.WatchedFileHandler(path)

        except (IOError, OSError) as exc:
            raise ConestabError('Cannot open log file %s: %s' % (path, exc))

    def __call__(self, s):
        AbstractLogger.__call__(self, '%s: %s' % (self._prog_id, s))


class StreamLogger(AbstractLogger):
    stream = None

    def make_handler(self, *priv):
        return logging.StreamHandler(self.stream)


class StdoutLogger(StreamLogger):
    stream = sys.stdout


class StderrLogger(StreamLogger):
    stream = sys.stderr


class NullLogger(AbstractLogger):

    def make_handler(self, *priv):
        return logging.NullHandler()

    def __call__(self, s):
        pass


METHODS_MAP = {
    'file': FileLogger,
    'stdout': StdoutLogger,
    'stderr': StderrLogger,
    'null': NullLogger
}

LEVELS_MAP = {
    'debug': LOG_DEBUG,
    'info': LOG_INFO,
    'error': LOG_ERROR,
}

# silent until a command installs a sink
msg = lambda x: None

log_level = LOG_INFO


def error(message, ctx=''):
    if log_level <= LOG_ERROR:
        msg('ERROR %s %s' % (message, ctx))


def info(message, ctx=''):
    if log_level <= LOG_INFO:
        msg('%s %s' % (message, ctx))


def debug(message, ctx=''):
    if log_level <= LOG_DEBUG:
        msg('DEBUG %s %s' % (message, ctx))


def set_level(level):
    global log_level

    if level not in LEVELS_MAP:
        raise ConestabError(
            'Unknown log level "%s", choose from: %s' % (
                level, ', '.join(sorted(LEVELS_MAP))))

    log_level = LEVELS_MAP[level]


def set_logger(prog_id, *priv, **options):
    """Install the sink `priv[0]` with arguments `priv[1:]`.

    An installed sink is kept unless `force` is given.
    """
    global msg

    if isinstance(msg, AbstractLogger) and not options.get('force'):
        return

    method = priv[0] if priv else 'stderr'

    if method not in METHODS_MAP:
        raise ConestabError(
            'Unknown logging method "%s", choose from: %s' % (
                method, ', '.join(sorted(METHODS_MAP))))

    msg = METHODS_MAP[method](prog_id, *priv[1:])
