#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Run configuration: JSON document overlaid with command-line flags
#
import copy
import json
import os

import numpy as np

from conestab import confdir
from conestab import log
from conestab import utils
from conestab.error import ConfigError

DEFAULT_SEED = 0

# per-command parameters with their defaults
DEFAULTS = {
    'classify': {
        'link': {'type': 'product-of-spheres', 'k': 3, 'l': 3},
        'mu1': None,
        'n': None,
        'eps': [float(np.exp(-np.pi)), float(np.exp(-2.0))],
        'grid': 256,
        'tol': 0.01,
        'truncated': False,
        'truncated_grid': [64, 16],
        'quotient_samples': 0,
    },
    'sweep': {
        'n_min': 2,
        'n_max': 10,
        'grid': None,
        'tol': None,
    },
    'calibration': {
        'cone': {'type': 'hopf-graph'},
        'calibration': {'form': 'coassociative'},
        'samples': 1000,
        'comass_trials': 0,
        'grid': None,
        'tol': 1e-8,
    },
    'variation-decay': {
        'f': {'nvars': 3, 'terms': [[[2, 0, 0], 1.0, 0.0],
                                    [[0, 2, 0], 1.0, 0.0],
                                    [[0, 0, 2], 1.0, 0.0]]},
        'N': [4, 8, 16, 32],
        'grid': 8,
        'k_samples': 10000,
        'tol': 0.01,
    },
    'forms': {
        'link': {'type': 'fourier-torus', 'd': 3, 'cutoff': 4},
        'n_values': [4, 5, 6, 8],
        'ledger': True,
        'curl_count': 12,
        'grid': None,
        'tol': 1e-10,
    },
}

COMMANDS = sorted(DEFAULTS)


def find_config(name):
    """Resolve a configuration file name against the search path"""
    if os.path.exists(name):
        return name

    for directory in confdir.config:
        for candidate in (name, name + os.path.extsep + 'json'):
            path = os.path.join(directory, candidate)

            if os.path.exists(path):
                return path

    raise ConfigError(
        'Configuration "%s" not found in %s' % (
            name, ', '.join(confdir.config)))


def _read_json(path):
    try:
        with open(path) as fl:
            doc = json.load(fl)

    except (IOError, OSError) as exc:
        raise ConfigError('Cannot read %s: %s' % (path, exc))

    except ValueError as exc:
        raise ConfigError('Malformed JSON in %s: %s' % (path, exc))

    if not isinstance(doc, dict):
        raise ConfigError('Configuration %s is not a JSON object' % path)

    return doc


class RunConfig(object):
    """Fully resolved parameters of one command run.

    `params` holds every command parameter, defaults included; `seed`,
    `out` and the version banner complete the provenance embedded into
    each artifact.
    """
    def __init__(self, command, params=None, seed=DEFAULT_SEED,
                 out=confdir.output, source=None):
        if command not in DEFAULTS:
            raise ConfigError(
                'Unknown command "%s", known commands are: %s' % (
                    command, ', '.join(COMMANDS)))

        params = dict(params or {})

        if 'command' in params:
            if params.pop('command') != command:
                raise ConfigError(
                    'Configuration is meant for another command')

        unknown = set(params) - set(DEFAULTS[command])

        if unknown:
            raise ConfigError(
                'Unknown %s parameter(s): %s' % (
                    command, ', '.join(sorted(unknown))))

        self.command = command
        self.params = copy.deepcopy(DEFAULTS[command])
        self.params.update(params)

        try:
            self.seed = int(seed)

        except (TypeError, ValueError):
            raise ConfigError('Seed must be an integer, got %r' % (seed,))

        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError('Seed must fit 64 unsigned bits')

        self.out = out
        self.source = source

    @classmethod
    def load(cls, command, path=None, seed=None, out=None, tol=None,
             grid=None):
        """Read `path` (if any), then apply flag overrides"""
        doc = {}
        source = None

        if path:
            source = find_config(path)
            doc = _read_json(source)

            log.info('Loaded %s configuration from %s' % (command, source))

        doc = dict(doc)

        file_seed = doc.pop('seed', DEFAULT_SEED)
        file_out = doc.pop('out', confdir.output)

        if tol is not None:
            doc['tol'] = tol

        if grid is not None:
            doc['grid'] = grid

        return cls(command, doc,
                   file_seed if seed is None else seed,
                   file_out if out is None else out,
                   source)

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)

    @property
    def tol(self):
        return self.params.get('tol')

    def rng(self, stream=0):
        return utils.make_rng(self.seed, stream)

    def provenance(self):
        return {'command': self.command,
                'config': self.params,
                'seed': self.seed,
                'tol': self.tol,
                'version': utils.VERSION}

    def __repr__(self):
        return 'RunConfig(%r, seed=%d)' % (self.command, self.seed)


def add_arguments(parser):
    """Flags shared by every command"""
    parser.add_argument(
        '--config', metavar='<PATH|NAME>', type=str,
        help='JSON run configuration, a path or a name found in the '
             'configuration search path')

    parser.add_argument(
        '--seed', metavar='<U64>', type=int,
        help='Seed of all random streams of the run')

    parser.add_argument(
        '--out', metavar='<DIR>', type=str,
        help='Directory to write artifacts into')

    parser.add_argument(
        '--tol', metavar='<FLOAT>', type=float,
        help='Acceptance tolerance of the run')

    parser.add_argument(
        '--grid', metavar='<INT>', type=int,
        help='Discretization size of the run')


def from_args(command, args):
    return RunConfig.load(command, args.config, args.seed, args.out,
                          args.tol, args.grid)
