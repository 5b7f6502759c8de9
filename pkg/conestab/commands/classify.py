#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Stability classification of a minimal cone
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
from conestab.error import ToleranceFailure
from conestab.error import UnsupportedLink
from conestab.links import catalog
from conestab.reporting.manager import ReportingManager

DESCRIPTION = (
    'Classify a minimal cone as strictly stable, stable or not stable '
    'from the first eigenvalue of its link stability operator, and '
    'cross-check against the truncated radial spectrum.')


def _quotients(spec, config, n):
    """Smallest stability quotient over random admissible sections"""
    eps = config['eps'][0]

    sections = spectral.random_sections(
        n, config.rng(0), eps, config['quotient_samples'])

    spectrum = spectral.scalar_link_spectrum(spec, 3)

    values = [spectral.stability_quotient(spec, s, spectrum)
              for s in sections]

    return {'eps': eps, 'samples': len(values), 'min_quotient': min(values)}


def _truncated(spec, config, mu1):
    rows = []

    for eps in config['eps']:
        numeric = spectral.truncated_cone_lambda1(
            spec, eps, tuple(config['truncated_grid']))
        predicted = spectral.gamma(spec.cone_dim, eps, 1) + mu1
        rel_err = abs(numeric - predicted) / abs(predicted)

        rows.append({'eps': eps, 'lambda1': numeric,
                     'predicted': predicted, 'rel_err': rel_err})

    return rows


def run(config):
    link = config['link']
    spec = catalog.from_json(link) if link else None

    report = spectral.classify(
        spec, mu1=config['mu1'], eps_values=config['eps'],
        grid=config['grid'], seed=config.seed, n=config['n'])

    document = report.to_json()
    document['provenance'] = config.provenance()

    worst = max([row['rel_err'] for row in report.lambda1_table] or [0.0])

    if config['truncated'] and spec is not None:
        document['truncated'] = _truncated(spec, config, report.mu1)
        worst = max([worst] + [row['rel_err'] for row in document['truncated']])

    if config['quotient_samples'] and spec is not None:
        document['quotients'] = _quotients(spec, config, report.n)

    ReportingManager.update_report('classify', document=document)

    if worst > config.tol:
        raise ToleranceFailure(
            'Radial eigenvalue off by %.3g (tolerance %.3g)' % (
                worst, config.tol), residual=worst)

    if 'quotients' in document:
        smallest = document['quotients']['min_quotient']

        if smallest < report.d0 - config.tol:
            raise ToleranceFailure(
                'Stability quotient %r below d0 = %r' % (smallest, report.d0),
                quotient=smallest, d0=report.d0)

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

        config = runconfig.from_args('classify', args)

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
        sys.stderr.write(
            '# n=%d mu1=%.17g d0=%.17g: %s\r\n' % (
                report.n, report.mu1, report.d0, report.verdict))

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
