#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import csv
import io

from conestab import utils
from conestab.reporting.formats import base


def format_cell(value):
    if isinstance(value, float):
        return utils.format_float(value)

    return str(value)


class CsvReporter(base.FileReporter):
    """Write `rows` artifacts as CSV tables with a fixed header.

    Rows are dicts; columns follow `header` and floats carry 17
    significant digits.
    """
    EXTENSION = 'csv'

    @base.ensure_base_types
    def update_report(self, name, header=None, rows=None, **kwargs):
        if header is not None:
            self._artifacts.append(
                (name, {'header': header, 'rows': rows or []}))

    def render(self, header, rows):
        buf = io.StringIO()

        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(header)

        for row in rows:
            writer.writerow([format_cell(row[column]) for column in header])

        return buf.getvalue()
