#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Decay of the cut-off Jacobi field Rayleigh quotient
#
import argparse
import os
import sys
import traceback

from conestab import log
from conestab import runconfig
from conestab import utils
from conestab.error import ConestabError
from conestab.error import ToleranceFailure
from conestab.error import UnsupportedLink
from conestab.reporting.manager import ReportingManager
from conestab.variations import cutoff
from conestab.variations import polynomial

DESCRIPTION = (
    'Cut off the holomorphic Jacobi field of a complex cone at scales '
    'e^-2N..e^2N and report the second variation, its bound and the '
    'weighted Rayleigh quotient for each N.')

COLUMNS = ['N', 'Q', 'bound', 'weighted_norm', 'rayleigh']


def run(config):
    f = polynomial.HolomorphicPolynomial.from_json(config['f'])

    report = cutoff.rayleigh_decay(
        f, config['N'], resolution=config['grid'],
        samples=int(config['k_samples']), rng=config.rng(0))

    document = report.to_json()
    document['is_decreasing'] = report.is_decreasing
    document['provenance'] = config.provenance()

    ReportingManager.update_report('variation-decay', header=COLUMNS,
                                   rows=report.rows)
    ReportingManager.update_report('variation-decay', document=document)

    for row in report.rows:
        if row['Q'] > row['bound'] * (1 + config.tol):
            raise ToleranceFailure(
                'Q = %r exceeds the bound %r at N = %g' % (
                    row['Q'], row['bound'], row['N']),
                Q=row['Q'], bound=row['bound'])

    if not report.is_decreasing:
        raise ToleranceFailure('Rayleigh quotients do not decrease')

    return report


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

        config = runconfig.from_args('variation-decay', args)

        ReportingManager.configure('csv', config.out)
        ReportingManager.configure('json', config.out)

    except ConestabError as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        parser.print_usage(sys.stderr)
        return 1

    try:
        report = run(config)

    except UnsupportedLink as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        return 2

    except ToleranceFailure as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        return 3

    except ConestabError as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        return 1

    if not args.quiet:
        for row in report.rows:
            sys.stderr.write(
                '# N=%(N)g Q=%(Q).6g bound=%(bound).6g '
                'rayleigh=%(rayleigh).6g\r\n' % row)

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
