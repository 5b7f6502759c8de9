#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import numpy as np
import pytest

from conestab.reporting.manager import ReportingManager


@pytest.fixture
def rng():
    return np.random.default_rng(20190611)


@pytest.fixture
def out_dir(tmp_path):
    return str(tmp_path / 'artifacts')


@pytest.fixture(autouse=True)
def reset_reporting():
    ReportingManager.reset()
    yield
    ReportingManager.reset()
