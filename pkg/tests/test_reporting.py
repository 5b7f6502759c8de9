#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import json
import os

import numpy as np
import pytest

from conestab.error import ConfigError
from conestab.reporting.formats import base
from conestab.reporting.formats import csvfile
from conestab.reporting.formats import jsonfile
from conestab.reporting.formats import null
from conestab.reporting.manager import ReportingManager


def test_to_base_types():
    doc = base.to_base_types({
        'a': np.float64(0.5),
        'b': np.arange(3),
        'c': (np.int64(1), np.bool_(True)),
        'd': 1 + 2j,
        3: None,
    })

    assert doc == {'a': 0.5, 'b': [0, 1, 2], 'c': [1, True],
                   'd': [1.0, 2.0], '3': None}

    assert type(doc['a']) is float
    assert type(doc['c'][0]) is int


def test_file_reporter_needs_directory():
    with pytest.raises(ConfigError):
        jsonfile.JsonReporter()

    with pytest.raises(ConfigError):
        csvfile.CsvReporter('')


def test_file_reporter_creates_directory(out_dir):
    reporter = jsonfile.JsonReporter(out_dir)

    assert os.path.isdir(out_dir)
    assert reporter.output_dir == out_dir
    assert reporter.path_of('forms') == os.path.join(out_dir, 'forms.json')


def test_json_reporter(out_dir):
    reporter = jsonfile.JsonReporter(out_dir)

    reporter.update_report('classify', document={
        'verdict': 'StrictlyStable', 'd0': np.float64(0.25), 'n': 7})

    # nothing is written before flush
    assert not os.path.exists(reporter.path_of('classify'))

    reporter.flush()

    with open(reporter.path_of('classify')) as fl:
        text = fl.read()

    assert json.loads(text) == {
        'verdict': 'StrictlyStable', 'd0': 0.25, 'n': 7}

    assert text == (
        '{\n  "d0": 0.25,\n  "n": 7,\n  "verdict": "StrictlyStable"\n}\n')


def test_json_reporter_ignores_tables(out_dir):
    reporter = jsonfile.JsonReporter(out_dir)

    reporter.update_report('sweep', header=['n'], rows=[{'n': 3}])
    reporter.flush()

    assert not os.listdir(out_dir)


def test_csv_reporter(out_dir):
    reporter = csvfile.CsvReporter(out_dir)

    reporter.update_report(
        'sweep', header=['n', 'd0', 'verdict'],
        rows=[{'n': 3, 'd0': -1.75, 'verdict': 'NotStable', 'extra': 1},
              {'n': 8, 'd0': 0.1, 'verdict': 'StrictlyStable'}])
    reporter.flush()

    with open(reporter.path_of('sweep')) as fl:
        lines = fl.read().splitlines()

    assert lines == ['n,d0,verdict',
                     '3,-1.75,NotStable',
                     '8,0.10000000000000001,StrictlyStable']


def test_csv_reporter_writes_header_of_empty_table(out_dir):
    reporter = csvfile.CsvReporter(out_dir)

    reporter.update_report('sweep', header=['n', 'd0'], rows=[])
    reporter.flush()

    with open(reporter.path_of('sweep')) as fl:
        assert fl.read() == 'n,d0\n'


def test_format_cell():
    assert csvfile.format_cell(1.0) == '1'
    assert csvfile.format_cell(1.0 / 3) == '0.33333333333333331'
    assert csvfile.format_cell(True) == 'True'


def test_null_reporter():
    reporter = null.NullReporter()

    reporter.update_report('classify', document={'a': 1})
    reporter.flush()

    assert str(reporter) == 'NullReporter'


def test_manager_routes_artifacts(out_dir):
    ReportingManager.configure('json', out_dir)
    ReportingManager.configure('csv', out_dir)

    assert isinstance(ReportingManager.reporter('json'), jsonfile.JsonReporter)
    assert ReportingManager.reporter('null') is None

    ReportingManager.update_report(
        'sweep', document={'rows': []}, header=['n'], rows=[])

    assert sorted(os.listdir(out_dir)) == ['sweep.csv', 'sweep.json']


def test_manager_rejects_unknown_format():
    with pytest.raises(ConfigError):
        ReportingManager.configure('xml', '.')


def test_manager_reset(out_dir):
    ReportingManager.configure('json', out_dir)
    ReportingManager.reset()

    ReportingManager.update_report('classify', document={'a': 1})

    assert not os.listdir(out_dir)


def test_artifacts_are_reproducible(tmp_path):
    doc = {'x': [0.1, 1e-300, np.float64(2.0) / 3], 'seed': 7}

    texts = []

    for name in ('one', 'two'):
        reporter = jsonfile.JsonReporter(str(tmp_path / name))
        reporter.update_report('report', document=doc)
        reporter.flush()

        with open(reporter.path_of('report'), 'rb') as fl:
            texts.append(fl.read())

    assert texts[0] == texts[1]
