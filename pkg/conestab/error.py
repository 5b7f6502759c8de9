#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#


class ConestabError(Exception):
    pass


class ConfigError(ConestabError):
    pass


class UnsupportedLink(ConestabError):
    pass


class ChartDegeneracy(ConestabError):
    pass


class SingularPoint(ConestabError):
    pass


class HypothesisViolation(ConestabError):
    pass


class DiagnosticError(ConestabError):
    """Error carrying named diagnostic values.

    Diagnostics are readable mapping-style, e.g. `exc['residual']`.
    """
    def __init__(self, message='', **kwargs):
        ConestabError.__init__(self, message)
        self.__kwargs = kwargs

    def __contains__(self, key):
        return key in self.__kwargs

    def __getitem__(self, key):
        return self.__kwargs[key]

    def get(self, key, default=None):
        return self.__kwargs.get(key, default)

    def keys(self):
        return self.__kwargs.keys()


class ConvergenceError(DiagnosticError):
    pass


class GridTooCoarse(DiagnosticError):
    pass


class ToleranceFailure(DiagnosticError):
    pass
