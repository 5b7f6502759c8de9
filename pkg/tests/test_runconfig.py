#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import argparse
import json

import pytest

from conestab import confdir
from conestab import log
from conestab import runconfig
from conestab import utils
from conestab.error import ConestabError
from conestab.error import ConfigError


@pytest.fixture
def config_file(tmp_path):
    def write(doc, name='run.json'):
        path = tmp_path / name

        with open(str(path), 'w') as fl:
            json.dump(doc, fl)

        return str(path)

    return write


@pytest.fixture
def restore_log(monkeypatch):
    monkeypatch.setattr(log, 'msg', log.msg)
    monkeypatch.setattr(log, 'log_level', log.log_level)


def test_defaults():
    config = runconfig.RunConfig('sweep')

    assert config['n_min'] == 2
    assert config['n_max'] == 10
    assert config.seed == runconfig.DEFAULT_SEED
    assert config.out == confdir.output
    assert config.tol is None


def test_defaults_are_not_shared():
    config = runconfig.RunConfig('forms')
    config['n_values'].append(12)

    assert runconfig.RunConfig('forms')['n_values'] == [4, 5, 6, 8]


@pytest.mark.parametrize('kwargs', [
    {'command': 'plot'},
    {'command': 'sweep', 'params': {'n_mx': 3}},
    {'command': 'sweep', 'params': {'command': 'classify'}},
    {'command': 'sweep', 'seed': 'abc'},
    {'command': 'sweep', 'seed': -1},
    {'command': 'sweep', 'seed': 2 ** 64},
])
def test_rejects(kwargs):
    with pytest.raises(ConfigError):
        runconfig.RunConfig(**kwargs)


def test_command_key_is_accepted():
    config = runconfig.RunConfig('sweep', {'command': 'sweep', 'n_max': 6})

    assert config['n_max'] == 6
    assert 'command' not in config.params


def test_load(config_file):
    path = config_file({'command': 'classify', 'seed': 3, 'out': 'runs',
                        'link': {'type': 'round-sphere', 'd': 3}})

    config = runconfig.RunConfig.load('classify', path)

    assert config.seed == 3
    assert config.out == 'runs'
    assert config['link'] == {'type': 'round-sphere', 'd': 3}
    assert config['grid'] == 256
    assert config.source == path


def test_flags_override_file(config_file):
    path = config_file({'seed': 3, 'out': 'runs', 'tol': 0.5})

    config = runconfig.RunConfig.load(
        'classify', path, seed=11, out='elsewhere', tol=0.02, grid=128)

    assert config.seed == 11
    assert config.out == 'elsewhere'
    assert config.tol == 0.02
    assert config['grid'] == 128


def test_load_rejects_bad_files(config_file, tmp_path):
    with pytest.raises(ConfigError):
        runconfig.RunConfig.load('sweep', config_file([1, 2, 3]))

    broken = tmp_path / 'broken.json'
    broken.write_text('{"n_min": ')

    with pytest.raises(ConfigError):
        runconfig.RunConfig.load('sweep', str(broken))

    with pytest.raises(ConfigError):
        runconfig.RunConfig.load('sweep', str(tmp_path / 'missing.json'))


def test_find_config_on_search_path(monkeypatch, tmp_path, config_file):
    config_file({'n_max': 4}, 'small-sweep.json')

    monkeypatch.setattr(confdir, 'config', [str(tmp_path)])

    path = runconfig.find_config('small-sweep')

    assert path == str(tmp_path / 'small-sweep.json')
    assert runconfig.RunConfig.load('sweep', 'small-sweep')['n_max'] == 4


def test_from_args(config_file):
    parser = argparse.ArgumentParser()
    runconfig.add_arguments(parser)

    path = config_file({'n_max': 7})

    args = parser.parse_args(['--config', path, '--seed', '5', '--out', 'x'])

    config = runconfig.from_args('sweep', args)

    assert config['n_max'] == 7
    assert config.seed == 5
    assert config.out == 'x'


def test_rng_streams_are_reproducible():
    config = runconfig.RunConfig('calibration', seed=42)

    a = config.rng(0).standard_normal(4)
    b = config.rng(1).standard_normal(4)

    assert list(a) == list(runconfig.RunConfig(
        'calibration', seed=42).rng(0).standard_normal(4))
    assert list(a) != list(b)
    assert list(a) == list(utils.make_rng(42, 0).standard_normal(4))


def test_provenance():
    config = runconfig.RunConfig('variation-decay', {'N': [2, 4]}, seed=9)

    doc = config.provenance()

    assert doc['command'] == 'variation-decay'
    assert doc['config']['N'] == [2, 4]
    assert doc['seed'] == 9
    assert doc['tol'] == 0.01
    assert doc['version'] == utils.VERSION


def test_format_float():
    assert utils.format_float(0.1) == '0.10000000000000001'
    assert float(utils.format_float(2.0 / 3)) == 2.0 / 3


def test_log_levels(restore_log):
    lines = []

    log.msg = lines.append

    log.set_level('error')
    log.info('hidden')
    log.error('shown')

    log.set_level('debug')
    log.debug('details')

    assert lines == ['ERROR shown ', 'DEBUG details ']

    with pytest.raises(ConestabError):
        log.set_level('verbose')


def test_file_logger(restore_log, tmp_path):
    path = str(tmp_path / 'run.log')

    log.set_logger('conestab-test-file', 'file', path, force=True)
    log.set_level('info')
    log.info('classified')

    with open(path) as fl:
        text = fl.read()

    assert 'conestab-test-file: classified' in text


@pytest.mark.parametrize('priv', [
    ('syslog',),
    ('file',),
    ('file', 'run.log', '10q'),
])
def test_set_logger_rejects(restore_log, priv):
    with pytest.raises(ConestabError):
        log.set_logger('conestab-test-bad', *priv, force=True)
