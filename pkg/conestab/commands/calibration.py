#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Calibration residuals of a catalog cone
#
import argparse
import os
import sys
import traceback

from conestab import calibrations
from conestab import log
from conestab import runconfig
from conestab import utils
from conestab.error import ConestabError
from conestab.error import ToleranceFailure
from conestab.error import UnsupportedLink
from conestab.links import catalog
from conestab.reporting.manager import ReportingManager

DESCRIPTION = (
    'Check that a catalog cone is calibrated by a given form: evaluate '
    'the form and its restriction conditions on random tangent planes.')


def run(config):
    spec = catalog.from_json(config['cone'])
    calibration = calibrations.from_json(config['calibration'])

    report = calibrations.calibration_test(
        spec, calibration, int(config['samples']), config.rng(0),
        config.seed)

    document = report.to_json()
    document['provenance'] = config.provenance()

    comass = None

    if config['comass_trials']:
        comass, _ = calibrations.comass_sample(
            calibration.build(), int(config['comass_trials']), config.rng(1))
        document['comass'] = comass

    ReportingManager.update_report('calibration', document=document)

    if not report.compatible:
        raise ToleranceFailure(
            '%r does not act on the tangent planes of %s' % (
                calibration, spec))

    if not report.passed(config.tol):
        raise ToleranceFailure(
            'Calibration residuals %.3g / %.3g above tolerance %.3g' % (
                report.max_restriction_residual, report.max_value_residual,
                config.tol),
            residual=max(report.max_restriction_residual,
                         report.max_value_residual))

    if comass is not None and comass > 1 + calibrations.COMASS_TOL:
        raise ToleranceFailure('Sampled comass %r exceeds 1' % comass,
                               comass=comass)

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

        config = runconfig.from_args('calibration', args)

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
            '# %d samples, residuals %.3g / %.3g: passed\r\n' % (
                report.samples, report.max_restriction_residual,
                report.max_value_residual))

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
