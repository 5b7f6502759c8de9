#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Stability table of the Lawson cone family
#
import argparse
import os
import sys
import traceback

from conestab import log
from conestab import runconfig
from conestab import spectral
from conestab import utils
from conestab.error import ConestabError
from conestab.reporting.manager import ReportingManager

DESCRIPTION = (
    'Tabulate mu1, d0 and the stability verdict of the cones over '
    'S^k x S^l for every k + l = n - 1 in a range of cone dimensions.')

COLUMNS = ['n', 'k', 'l', 'mu1', 'd0', 'verdict']


def run(config):
    n_values = range(int(config['n_min']), int(config['n_max']) + 1)

    rows = spectral.lawson_sweep(n_values)

    ReportingManager.update_report('sweep', header=COLUMNS, rows=rows)
    ReportingManager.update_report(
        'sweep', document={'rows': rows, 'columns': COLUMNS,
                           'provenance': config.provenance()})

    return rows


def main():

    parser = argparse.ArgumentParser(description=DESCRIPTION)

    parser.add_argument(
        '-v', '--version', action='version',
        version=utils.TITLE)

    parser.add_argument(
        '--quiet', action='store_true',
        help='Do not print out informational messages')

    parser.add_argument(
        '--logging-method', type=lambda x: x.split(':'),
        metavar='=<%s[:args]>]' % '|'.join(log.METHODS_MAP),
        default='stderr', help='Logging method.')

    parser.add_argument(
        '--log-level', choices=log.LEVELS_MAP,
        type=str, default='info', help='Logging level.')

    runconfig.add_arguments(parser)

    args = parser.parse_args()

    proc_name = os.path.basename(sys.argv[0])

    try:
        log.set_logger(proc_name, *args.logging_method, force=True)

        if args.log_level:
            log.set_level(args.log_level)

        config = runconfig.from_args('sweep', args)

        ReportingManager.configure('csv', config.out)
        ReportingManager.configure('json', config.out)

    except ConestabError as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        parser.print_usage(sys.stderr)
        return 1

    try:
        rows = run(config)

    except ConestabError as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        return 1

    if not args.quiet:
        for row in rows:
            sys.stderr.write(
                '# n=%(n)d S^%(k)d x S^%(l)d d0=%(d0)g %(verdict)s\r\n' % row)

    return 0


if __name__ == '__main__':
    try:
        rc = main()

    except KeyboardInterrupt:
        sys.stderr.write('shutting down process...')
        rc = 0

    except Exception as exc:
        sys.stderr.write('process terminated: %s' % exc)

        for line in traceback.format_exception(*sys.exc_info()):
            sys.stderr.write(line.replace('\n', ';'))
        rc = 1

    sys.exit(rc)
