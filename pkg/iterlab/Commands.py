# -*- coding: utf-8 -*-
#
# Command dispatch shared by the command line plugins
#
# Copyright (C) 2025 The IterLab Developers
#
# This program is free software; you can redistribute it and/or modify it
# under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# Every command reads a RunConfig, calls into the module that owns the
# work and renders the result as a text table (standard output) and, when
# asked for, as JSON.  Library errors are turned into exit codes here and
# nowhere else:
#     0  success
#     2  configuration error
#     3  numerical failure

import sys
import json
import click

from tqdm import tqdm

from .BigReal import format_decimal
from .BigReal import precision_for_digits
from .MapSpec import Coordinates
from .Matcher import ExpansionResult
from .Matcher import solve_expansion
from .AsymSeries import format_series
from .Orbit import OrbitRequest
from .Orbit import OrbitResult
from .Orbit import iterate_map
from .Orbit import orbit_precision
from .Extractor import MIN_EXTRACTION_INDEX
from .Extractor import extract_constant
from .Extractor import stability_scan
from .Thron import dottie
from .Thron import geometric_limit
from .Reproduce import ReproSuite
from .Settings import OUTPUT_FORMATS
from .Settings import RunConfig
from .Errors import ConfigError
from .Errors import ExitCode
from .Errors import IterLabError

import logging
from .Logging import ITERLAB_CLI
logger = logging.getLogger(ITERLAB_CLI)


class ProgressBar(object):
    """
    Adapts a tqdm progress bar to the progress(k, K_max) callbacks the
    engine reports with.
    """

    def __init__(self, total, enabled=True):
        self.position = 0
        self.tqdm = tqdm(total=total, unit_scale=True) if enabled else None

    def __call__(self, k, total=None):
        if self.tqdm is not None and k > self.position:
            self.tqdm.update(k - self.position)
        self.position = max(self.position, k)

    def step(self, *args):
        self(self.position + 1)

    def close(self):
        if self.tqdm is not None:
            self.tqdm.close()
            self.tqdm = None


def _require(config, *names):
    missing = [n for n in names if getattr(config, n) is None]
    if missing:
        raise ConfigError('the %s command requires %s' % (
            config.command, ', '.join('--%s' % n.replace('_', '-')
                                      for n in missing)))


def _load_json(path, what):
    try:
        with open(path, 'r') as f:
            return json.load(f)

    except (IOError, OSError, ValueError) as e:
        logger.debug('%s' % str(e))
        raise ConfigError('Failed to read the %s file %s' % (what, path))


def write_json(content, path):
    """
    Writes content to path as sorted, indented JSON
    """
    try:
        with open(path, 'w') as f:
            f.write(json.dumps(content, sort_keys=True, indent=2))
            f.write('\n')

    except (IOError, OSError) as e:
        logger.debug('%s' % str(e))
        raise ConfigError('Failed to write %s' % path)

    logger.info('Wrote %s' % path)


def _taylor_degree(config, spec):
    """
    The degree of the Taylor model the expansion is solved from
    """
    if config.degree is not None:
        return config.degree

    if spec.is_exact_polynomial:
        return spec.polynomial_degree

    return config.cutoff_halves + 2


def expand(config, show_progress=False):
    """
    Solves the asymptotic expansion of a map's orbit
    """
    _require(config, 'map')
    precision_bits = config.resolve_precision()
    degree = _taylor_degree(config, config.map)

    model = config.map.taylor_at_fixed_point(degree, precision_bits)
    result = solve_expansion(
        model, config.cutoff_halves, precision_bits,
        exact_map=config.map.is_exact_polynomial)

    lines = ['%-8s %-8s %-10s %s' % ('k^(-h/2)', 'ln(k)^j', 'status',
                                     'coefficient')]
    for (halves, logpow), coeff in result.series.items():
        lines.append('%-8d %-8d %-10s %s' % (
            halves, logpow, result.finality[(halves, logpow)],
            coeff.format(config.digits)))

    lines.append('map: %s (Taylor degree %d)' % (
        config.map.description, degree))
    lines.append('residual: %s' % format_decimal(result.residual_max, 6))
    lines.append('u(k) ~ %s' % format_series(result.series, 12))

    content = result.to_dict(config.digits)
    content['map'] = config.map.description
    content['precision_bits'] = precision_bits
    return result, lines, content


def orbit(config, show_progress=False):
    """
    Iterates a map and samples it at its checkpoints
    """
    _require(config, 'map', 'x0')
    if config.checkpoints is None and config.K is None:
        raise ConfigError('the orbit command requires --checkpoints or --K')

    K = config.K if config.K is not None else config.checkpoints[-1]
    precision_bits = config.precision_bits or \
        orbit_precision(config.digits, K)

    req = OrbitRequest(
        config.map, config.x0, K_max=K, checkpoints=config.checkpoints,
        precision_bits=precision_bits)

    progress = ProgressBar(req.K_max, enabled=show_progress)
    try:
        result = iterate_map(req, progress=progress)

    finally:
        progress.close()

    lines = ['%-12s %s' % ('k', 'x_k' if result.coordinates ==
                           Coordinates.RAW else 's_k')]
    for k, value in result.samples:
        lines.append('%-12d %s' % (k, format_decimal(value, config.digits)))

    return result, lines, result.to_dict(config.digits)


def extract(config, show_progress=False):
    """
    Extracts the free constant from an orbit file using a series file
    """
    _require(config, 'series_path', 'orbit_path')

    orbit = OrbitResult.from_dict(_load_json(config.orbit_path, 'orbit'))
    content = _load_json(config.series_path, 'series')
    if 'map' in content and content['map'] != orbit.description:
        logger.warning('The series was solved for %s but the orbit is of %s'
                       % (content['map'], orbit.description))

    precision_bits = config.precision_bits or orbit.precision_bits
    series = ExpansionResult.from_dict(content, precision_bits).series

    usable = [k for k in orbit.checkpoints if k >= MIN_EXTRACTION_INDEX]
    if config.K is not None:
        try:
            value = orbit.value_at(config.K)

        except KeyError:
            raise ConfigError(
                'the orbit holds no sample at K=%d' % config.K)

        estimate = extract_constant(series, config.K, value, precision_bits)
        lines = ['C(K=%d) = %s' % (
            estimate.K, format_decimal(estimate.C, config.digits))]
        return estimate, lines, estimate.to_dict(config.digits)

    if len(usable) >= 3 and usable[-1] >= usable[0] * 100:
        report = stability_scan(series, orbit)
        lines = ['%-12s %s' % ('K', 'C')]
        for e in report.estimates:
            lines.append('%-12d %s' % (e.K, format_decimal(
                e.C, config.digits)))

        for (lo, hi), digits in report.agreed_digits:
            lines.append('%d..%d agree on %d digit(s)' % (lo, hi, digits))

        for k, reason in report.failures:
            lines.append('K=%d failed: %s' % (k, reason))

        lines.append('verdict: %s' % report.verdict)
        return report, lines, report.to_dict(config.digits)

    if not usable:
        raise ConfigError(
            'the orbit holds no sample at K >= %d' % MIN_EXTRACTION_INDEX)

    K = usable[-1]
    estimate = extract_constant(
        series, K, orbit.value_at(K), precision_bits)
    lines = ['C(K=%d) = %s' % (K, format_decimal(estimate.C, config.digits))]
    return estimate, lines, estimate.to_dict(config.digits)


def rate(config, show_progress=False):
    """
    Computes lim u_k/rho^k for a geometrically converging map
    """
    _require(config, 'map', 'u0')
    precision_bits = config.resolve_precision()

    result = geometric_limit(
        config.map, config.u0, target_digits=config.digits,
        precision_bits=precision_bits)

    lines = [
        'map:          %s' % config.map.description,
        'rho:          %s' % format_decimal(result.rho, config.digits),
        'limit:        %s' % format_decimal(result.limit, config.digits),
        'factors used: %d' % result.factors_used,
        'tail bound:   %s' % format_decimal(result.tail_bound, 4),
        'contraction:  %s' % format_decimal(result.contraction, 12),
    ]

    if result.hand_bound is not None:
        lines.append(
            'hand bound:   %s' % format_decimal(result.hand_bound, 12))

    return result, lines, result.to_dict(config.digits)


def dottie_command(config, show_progress=False):
    """
    Resolves Dottie's number
    """
    precision_bits = config.precision_bits or \
        precision_for_digits(config.digits)

    theta = dottie(precision_bits)
    text = format_decimal(theta, config.digits)
    return theta, [text], {
        'theta': text,
        'precision_bits': precision_bits,
    }


def reproduce_command(config, show_progress=False):
    """
    Runs the reproduction suite
    """
    suite = ReproSuite(
        profile=config.profile, precision_bits=config.precision_bits,
        threads=config.threads)

    progress = ProgressBar(len(suite.entries), enabled=show_progress)
    suite.on_entry = progress.step
    try:
        report = suite.run()

    finally:
        progress.close()

    return report, report.table(), report.to_dict()


COMMAND_MAP = {
    'expand': expand,
    'orbit': orbit,
    'extract': extract,
    'rate': rate,
    'dottie': dottie_command,
    'reproduce': reproduce_command,
}


def run_command(config, show_progress=False, echo=print):
    """
    Runs the command a RunConfig describes.

    The text rendering is written through echo (unless JSON output was
    requested in its place) and the JSON rendering is written to out_path
    when one was specified.

    Returns the tuple (exit_code, result); result is None on failure.
    """
    fn = COMMAND_MAP.get(config.command)
    if fn is None:
        logger.error('unsupported command %r' % (config.command, ))
        return ExitCode.CONFIG_ERROR, None

    try:
        result, lines, content = fn(config, show_progress=show_progress)

        if config.out_path:
            write_json(content, config.out_path)

    except IterLabError as e:
        logger.error(str(e))
        return e.exit_code, None

    if config.json:
        echo(json.dumps(content, sort_keys=True, indent=2))

    else:
        for line in lines:
            echo(line)

    if config.command == 'reproduce' and not result.passed:
        # the report is still written; the run just did not pass
        return ExitCode.NUMERICAL_ERROR, result

    return ExitCode.SUCCESS, result


def common_options(fn):
    """
    The options every computing command shares
    """
    fn = click.option(
        '--output', type=click.Choice(OUTPUT_FORMATS), default=None,
        help='Render the result as a text table or as JSON.')(fn)
    fn = click.option(
        '--out', 'out_path', default=None, metavar='PATH',
        help='Also write the JSON result to PATH.')(fn)
    fn = click.option(
        '--precision-bits', type=int, default=None,
        help='The working precision in bits.')(fn)
    fn = click.option(
        '--digits', type=int, default=None,
        help='The number of significant digits to report.')(fn)
    return fn


def invoke(ctx, command, threads=None, **flags):
    """
    Builds the RunConfig for a command line request and runs it; the
    process exits with the command's exit code.
    """
    try:
        config = RunConfig.from_sources(
            ctx.get('Settings'), command, **flags)

    except ConfigError as e:
        logger.error(str(e))
        sys.exit(e.exit_code)

    if threads is not None:
        if threads < 1:
            logger.error('threads must be at least 1')
            sys.exit(ExitCode.CONFIG_ERROR)
        config.threads = threads

    code, _ = run_command(
        config, show_progress=ctx.get('verbose', 0) > 0, echo=click.echo)

    if code != ExitCode.SUCCESS:
        sys.exit(code)
