#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
import json

from conestab.reporting.formats import base


class JsonReporter(base.FileReporter):
    """Write `document` artifacts as JSON files.

    Documents are dumped with sorted keys and two-space indentation.
    Floats come out in their shortest round-tripping form, so the same
    document always produces the same bytes.
    """
    EXTENSION = 'json'

    @base.ensure_base_types
    def update_report(self, name, document=None, **kwargs):
        if document is not None:
            self._artifacts.append((name, {'document': document}))

    def render(self, document):
        return json.dumps(document, indent=2, sort_keys=True) + '\n'
