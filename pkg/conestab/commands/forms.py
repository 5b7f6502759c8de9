#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Closed and co-closed form obstructions on cones over flat links
#
import argparse
import os
import sys
import traceback

from conestab import log
from conestab import runconfig
from conestab import utils
from conestab.coneforms import fourier
from conestab.coneforms import oneforms
from conestab.coneforms import twoforms
from conestab.error import ConestabError
from conestab.error import ToleranceFailure
from conestab.error import UnsupportedLink
from conestab.reporting.manager import ReportingManager

DESCRIPTION = (
    'Search for closed and co-closed 1-forms of critical homogeneity on '
    'cones over a flat link, check the Hodge spectrum for positivity and '
    'tabulate the Hodge Laplacian of Beltrami fields under both '
    'codifferential sign conventions.')


def run(config):
    link = fourier.from_json(config['link'])

    document = {
        'link': link.to_json(),
        'obstructions': [
            oneforms.critical_oneform_obstruction(link, int(n)).to_json()
            for n in config['n_values']],
        'hodge': [twoforms.hodge_psd_check(link, p).to_json()
                  for p in range(link.d + 1)],
        'provenance': config.provenance(),
    }

    if link.d == 3 and link.cutoff >= 2:
        document['curl_spectrum'] = twoforms.curl_spectrum(
            link, config['curl_count'])

    if link.d == 3 and config['ledger']:
        document['ledger'] = twoforms.neg1_ledger(
            link, rng=config.rng(0)).to_json()

    ReportingManager.update_report('forms', document=document)

    for report in document['hodge']:
        if report['min_eigenvalue'] < -config.tol:
            raise ToleranceFailure(
                'Hodge Laplacian on %d-forms has eigenvalue %r' % (
                    report['degree'], report['min_eigenvalue']),
                residual=report['min_eigenvalue'])

    return document


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

        config = runconfig.from_args('forms', args)

        ReportingManager.configure('json', config.out)

    except ConestabError as exc:
        sys.stderr.write('ERROR: %s\r\n' % exc)
        parser.print_usage(sys.stderr)
        return 1

    try:
        document = run(config)

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
        for report in document['obstructions']:
            sys.stderr.write(
                '# n=%(n)d lambda=%(lambda)g: %(verdict)s\r\n' % report)

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
