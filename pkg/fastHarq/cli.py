# ------------------------------------------------------------------------------
# cli.py
# Command line front end: a JSON run configuration in, CSV or JSON tables out.
#
#   python -m fastHarq analyze  --config run.json [--out table.csv]
#   python -m fastHarq simulate --config run.json --packets 1000000 --seed 7
#   python -m fastHarq optimize --config run.json
#   python -m fastHarq figure fig12 --out tables/
#
# Exit codes: 0 success, 2 configuration error, 3 every row infeasible,
# 4 numerical failure.
# ------------------------------------------------------------------------------

import os
import csv
import sys
import json
import math
import argparse
import dataclasses
import logging

import numpy as np

from . import analysis, approximation, figures, monteCarlo, optimize, power, runConfig
from .sweepThread import runSweep
from .harqErrors import (configError, infeasibleError, nonBracketedError, quadratureError,
                         specialFunctionError, unsupportedConfigError)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

# Column units; boundary columns q1, q2, ... are gains
UNITS = {
    'snr_db': 'dB', 'total_snr_db': 'dB', 'p_cons_db': 'dB',
    'sub_len': 'cu', 'big_k': 'nats', 'n_r': 'count', 'n_p': 'count', 'm_max': 'count',
    'error_prob': 'probability', 'error_prob_se': 'probability',
    'expected_delay': 'cu', 'expected_delay_se': 'cu',
    'standard_delay': 'cu', 'relative_gain': 'fraction', 'throughput_gain': 'fraction',
    'throughput': 'npcu', 'standard_throughput': 'npcu',
    'constrained_delay': 'cu', 'constrained_delay_se': 'cu',
    'unnecessary_prob': 'probability', 'unnecessary_prob_se': 'probability',
    'unnecessary_energy': 'energy', 'unnecessary_energy_se': 'energy',
    'analytic_error_prob': 'probability', 'analytic_delay': 'cu',
    'analytic_constrained_delay': 'cu',
    'clt_error': 'probability', 'clt_delay': 'cu',
    'gamma_error': 'probability', 'gamma_delay': 'cu',
    'linearized_error': 'probability', 'linearized_delay': 'cu',
    'asymptotic_error': 'probability', 'asymptotic_delay': 'cu',
    'asymptotic_clt_error': 'probability', 'asymptotic_gamma_error': 'probability',
    'csir_delay': 'cu', 'csir_delay_se': 'cu',
    'objective': 'cu|npcu', 'exhaustive_objective': 'cu|npcu', 'queen_objective': 'cu|npcu',
    'evaluations': 'count', 'status': 'tag', 'method': 'tag', 'config_hash': 'tag',
}

_AXIS_COLUMN = {'snrDb': 'snr_db', 'subLen': 'sub_len', 'bigK': 'big_k', 'nR': 'n_r', 'nPilots': 'n_p'}


def _unit(column):
    if column[0] == 'q' and column[1:].isdigit():
        return 'gain'

    return UNITS.get(column, '-')


def _pointColumns(config, point):
    dist = point['dist']
    row = {
        'm_max': config.mMax,
        'snr_db': point['snrDb'],
        'total_snr_db': runConfig.linearToDb(dist.nR * point['pCons']),
    }

    if config.sweepAxis != 'snrDb':
        row[_AXIS_COLUMN[config.sweepAxis]] = point['value']

    return row


def _boundaryColumns(b):
    return {'q{}'.format(i): q for i, q in enumerate(b.interior, start=1)}


def _saturated(config, point):
    pa = point['pa']
    if power.outputPower(pa, point['pCons']) <= pa.pMax:
        return None

    logger.warning('sweep point %s=%s needs more than P_max', config.sweepAxis, point['value'])
    row = _pointColumns(config, point)
    row['status'] = 'infeasible'
    return row


def _boundariesFor(config, point):
    b = config.fixedBoundaries(point['dist'])

    if b is None:
        b = optimize.optimize(point['system'], point['pCons'], config.optimizeSpec).boundaries

    return b


# ------------------------------------------------------------------------------
# cmdAnalyze
# param config - runConfig.RunConfig
# return rows, one per sweep point
# ------------------------------------------------------------------------------
def cmdAnalyze(config):
    def evaluate(point):
        system, pCons = point['system'], point['pCons']
        dist, pa, cfg = point['dist'], point['pa'], point['cfg']
        asym = config.asymptotic

        saturated = _saturated(config, point)
        if saturated is not None:
            return saturated

        b = _boundariesFor(config, point)
        metrics = system.metrics(b, pCons)
        standard = system.metrics(analysis.Boundaries.standard(cfg.mMax), pCons)
        unnecessaryProb, unnecessaryEnergy = analysis.unnecessaryTxStats(dist, b, pa, pCons, cfg, asym)

        row = _pointColumns(config, point)
        row.update(_boundaryColumns(b))
        row.update({
            'status': 'ok',
            'error_prob': metrics.errorProb,
            'expected_delay': metrics.expectedDelay,
            'throughput': metrics.throughput,
            'constrained_delay': metrics.constrainedDelay,
            'unnecessary_prob': unnecessaryProb,
            'unnecessary_energy': unnecessaryEnergy,
            'standard_delay': standard.expectedDelay,
            'standard_throughput': standard.throughput,
            'relative_gain': analysis.relativeGain(standard.expectedDelay, metrics.expectedDelay),
            'throughput_gain': _throughputGain(metrics.throughput, standard.throughput),
        })

        for method in config.approximations:
            if method == 'asymptotic':
                approx = approximation.asymptoticMetrics(dist, b, cfg, pa, pCons)
                row['asymptotic_clt_error'] = approximation.asymptoticErrorApprox(dist, cfg, pa, pCons, 'clt')
                row['asymptotic_gamma_error'] = approximation.asymptoticErrorApprox(dist, cfg, pa, pCons, 'gamma')
            else:
                approx = approximation.approximateMetrics(system, b, pCons, method)

            row[method + '_error'] = approx.errorProb
            row[method + '_delay'] = approx.expectedDelay

        if config.sweepAxis == 'nPilots':
            # same seed for every pilot count: common random numbers
            estimate = analysis.expectedDelayImperfectCsir(
                dist, point['pilot'], b, pa, pCons, cfg,
                np.random.default_rng(config.seed), nSamples=config.packets)
            row['csir_delay'] = estimate.mean
            row['csir_delay_se'] = estimate.stdError

        return row

    return _sweep(config, evaluate)


def _throughputGain(fast, standard):
    if fast <= 0:
        return 0.0

    return (fast - standard) / fast


# ------------------------------------------------------------------------------
# cmdSimulate
# Monte Carlo estimates with standard errors next to the analytic values
# ------------------------------------------------------------------------------
def cmdSimulate(config):
    def evaluate(point):
        dist, pa, cfg, pCons = point['dist'], point['pa'], point['cfg'], point['pCons']

        saturated = _saturated(config, point)
        if saturated is not None:
            return saturated

        b = _boundariesFor(config, point)
        sim = monteCarlo.estimateMetrics(dist, b, pa, pCons, cfg, config.packets,
                                         seed=config.seed, asymptotic=config.asymptotic)
        exact = point['system'].metrics(b, pCons)

        row = _pointColumns(config, point)
        row.update(_boundaryColumns(b))
        row.update({
            'status': 'ok',
            'error_prob': sim.error.mean,
            'error_prob_se': sim.error.stdError,
            'expected_delay': sim.delay.mean,
            'expected_delay_se': sim.delay.stdError,
            'throughput': sim.throughput,
            'constrained_delay': None if sim.constrainedDelay is None else sim.constrainedDelay.mean,
            'constrained_delay_se': None if sim.constrainedDelay is None else sim.constrainedDelay.stdError,
            'unnecessary_prob': sim.unnecessaryProb.mean,
            'unnecessary_prob_se': sim.unnecessaryProb.stdError,
            'unnecessary_energy': sim.unnecessaryEnergy.mean,
            'unnecessary_energy_se': sim.unnecessaryEnergy.stdError,
            'analytic_error_prob': exact.errorProb,
            'analytic_delay': exact.expectedDelay,
            'analytic_constrained_delay': exact.constrainedDelay,
        })

        return row

    return _sweep(config, evaluate)


# ------------------------------------------------------------------------------
# cmdOptimize
# Boundary optimization per sweep point, at the point's power or at the power
# meeting optimize.beta; infeasible points are flagged, not fatal
# ------------------------------------------------------------------------------
def cmdOptimize(config):
    spec = config.optimizeSpec

    def evaluate(point):
        system, cfg = point['system'], point['cfg']
        row = _pointColumns(config, point)
        pCons = point['pCons']

        if config.beta is None:
            saturated = _saturated(config, point)
            if saturated is not None:
                return saturated

        try:
            if config.beta is not None:
                pCons, result = optimize.solveConstrained(system, config.beta, spec)
            else:
                result = optimize.optimize(system, pCons, spec)
        except infeasibleError as e:
            logger.warning('sweep point %s=%s infeasible: %s', config.sweepAxis, point['value'], e)
            row.update({'status': 'infeasible'})
            return row

        other = 'queen' if spec.method == 'exhaustive' else 'exhaustive'
        otherResult = optimize.optimize(system, pCons, _withMethod(spec, other))
        standard = analysis.expectedDelay(point['dist'], analysis.Boundaries.standard(cfg.mMax),
                                          point['pa'], pCons, cfg, asymptotic=config.asymptotic)
        delay = analysis.expectedDelay(point['dist'], result.boundaries, point['pa'], pCons, cfg,
                                       asymptotic=config.asymptotic)

        row.update({
            'status': 'ok',
            'p_cons_db': runConfig.linearToDb(pCons),
            'method': result.method,
            'objective': result.objectiveValue,
            result.method + '_objective': result.objectiveValue,
            other + '_objective': otherResult.objectiveValue,
            'evaluations': result.evaluations,
            'expected_delay': delay,
            'standard_delay': standard,
            'relative_gain': analysis.relativeGain(standard, delay),
        })
        row.update(_boundaryColumns(result.boundaries))

        return row

    return _sweep(config, evaluate)


def _withMethod(spec, method):
    return dataclasses.replace(spec, method=method)


def _sweep(config, evaluate):
    digest = config.configHash()
    rows = runSweep(config.sweepPoints(), evaluate, workers=config.workers)

    for row in rows:
        row['config_hash'] = digest

    return rows


# ------------------------------------------------------------------------------
# cmdFigure
# param name - figure bundle name, see figures.FIGURES
# param seed, packets, workers - optional overrides applied to every config
# return dict table name -> rows
# ------------------------------------------------------------------------------
def cmdFigure(name, seed=None, packets=None, workers=None):
    if name not in figures.FIGURES:
        raise configError('unknown figure {!r}, expected one of {}'.format(
            name, ', '.join(sorted(figures.FIGURES))), key='figure')

    commands = {'analyze': cmdAnalyze, 'simulate': cmdSimulate, 'optimize': cmdOptimize}
    tables = {}

    for table in figures.FIGURES[name]():
        rows = []
        for config in table.configs:
            config = config.withOverrides(seed=seed, packets=packets, workers=workers)
            rows.extend(commands[table.command](config))

        tables[table.name] = rows

    return tables


# ------------------------------------------------------------------------------
# Table output
# ------------------------------------------------------------------------------

def _columns(rows):
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)

    return columns


def _cell(value):
    if value is None:
        return ''

    if isinstance(value, bool) or isinstance(value, str):
        return str(value)

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    return repr(float(value))


def _jsonValue(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)

    if isinstance(value, np.integer):
        return int(value)

    return value


def _jsonDocument(rows):
    columns = _columns(rows)

    return {
        'columns': [{'name': c, 'unit': _unit(c)} for c in columns],
        'rows': [{c: _jsonValue(row.get(c)) for c in columns} for row in rows],
    }


def writeTable(rows, stream, fmt='csv'):
    columns = _columns(rows)

    if fmt == 'json':
        json.dump(_jsonDocument(rows), stream, indent=2)
        stream.write('\n')
        return

    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['{} [{}]'.format(c, _unit(c)) for c in columns])

    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])


def _emit(rows, path, fmt):
    if path is None:
        writeTable(rows, sys.stdout, fmt)
        return

    with open(path, 'w', encoding='utf-8', newline='') as f:
        writeTable(rows, f, fmt)


def _emitBundle(tables, path, fmt):
    # stdout json bundle: one object keyed by table name
    if path is None and fmt == 'json':
        documents = {name: _jsonDocument(rows) for name, rows in tables.items()}
        json.dump(documents, sys.stdout, indent=2)
        sys.stdout.write('\n')
        return

    for name, rows in tables.items():
        if path is None:
            sys.stdout.write('# {}\n'.format(name))
            writeTable(rows, sys.stdout, fmt)
            continue

        os.makedirs(path, exist_ok=True)
        _emit(rows, os.path.join(path, '{}.{}'.format(name, fmt)), fmt)


# ------------------------------------------------------------------------------
# Argument parsing
# ------------------------------------------------------------------------------

def _boundaryArg(text):
    if text in runConfig.BOUNDARY_MODES:
        return text

    try:
        return tuple(float(x) for x in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected standard, uniform, optimized or a comma separated list of gains')


def buildParser():
    parser = argparse.ArgumentParser(prog='fastHarq', description='Fast HARQ link analysis and simulation')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='output file, or directory for figure bundles')
    common.add_argument('--format', choices=runConfig.FORMATS, help='table format (default csv)')
    common.add_argument('--seed', type=int, help='random seed')
    common.add_argument('--packets', type=int, help='Monte Carlo packets or samples')
    common.add_argument('--workers', type=int, help='sweep worker threads')
    common.add_argument('--verbose', action='store_true', help='debug logging on stderr')

    for name in ('analyze', 'simulate', 'optimize'):
        p = sub.add_parser(name, parents=[common])
        p.add_argument('--config', required=True, help='JSON run configuration')
        p.add_argument('--third-order', dest='thirdOrder', action='store_true', default=None,
                       help='add the third order term to the round error')
        if name != 'optimize':
            p.add_argument('--boundaries', type=_boundaryArg,
                           help='standard | uniform | optimized | q1,q2,...')

    p = sub.add_parser('figure', parents=[common])
    p.add_argument('name', help='figure bundle, one of {}'.format(', '.join(sorted(figures.FIGURES))))

    return parser


def _loadConfig(args):
    config = runConfig.loadRunConfig(args.config)

    return config.withOverrides(seed=args.seed, packets=args.packets, thirdOrder=args.thirdOrder,
                                boundaries=getattr(args, 'boundaries', None), outputFormat=args.format,
                                outputPath=args.out, workers=args.workers)


def _infeasibleOnly(rows):
    return len(rows) > 0 and all(row.get('status') == 'infeasible' for row in rows)


def main(argv=None):
    args = buildParser().parse_args(argv)

    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')

    try:
        if args.command == 'figure':
            tables = cmdFigure(args.name, seed=args.seed, packets=args.packets, workers=args.workers)
            _emitBundle(tables, args.out, args.format or 'csv')
            rows = [row for table in tables.values() for row in table]
        else:
            config = _loadConfig(args)
            rows = {'analyze': cmdAnalyze, 'simulate': cmdSimulate, 'optimize': cmdOptimize}[args.command](config)
            _emit(rows, config.outputPath, config.outputFormat)

    except (configError, unsupportedConfigError, ValueError, OSError) as e:
        logger.error('configuration error: %s', e)
        return EXIT_CONFIG

    except (specialFunctionError, quadratureError, nonBracketedError, infeasibleError) as e:
        logger.error('numerical failure: %s', e)
        return EXIT_NUMERICAL

    if _infeasibleOnly(rows):
        logger.error('no sweep point is feasible')
        return EXIT_INFEASIBLE

    return EXIT_OK

# ------------------------------------ EOF -------------------------------------
