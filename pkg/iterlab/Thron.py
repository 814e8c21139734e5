# -*- coding: utf-8 -*-
#
# Geometric rate limits of maps with a contracting fixed point
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
"""
When the linear coefficient rho of a local map lies strictly between 0 and
1 the orbit converges geometrically and u_k / rho^k has a limit.  Writing
the map as

    f(x) = rho * x + x^2 * F(x)

with the remainder F bounded on the orbit, every step multiplies the scaled
orbit by the factor (1 + u_j F(u_j) / rho); the limit is the starting value
times the convergent infinite product of those factors.
"""

from functools import lru_cache

from gevent import sleep

from .BigReal import BigReal
from .BigReal import DEFAULT_GUARD_BITS
from .BigReal import default_precision
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .BigReal import precision_for_digits
from .MapSpec import MapKind
from .Roots import dottie_number
from .Errors import BasinError
from .Errors import ConvergenceError
from .Errors import DomainError
from .Errors import PreconditionError

import logging
from .Logging import ITERLAB_ENGINE
logger = logging.getLogger(ITERLAB_ENGINE)

# Extra bits carried on top of the cancellation in f(x) - rho*x
REMAINDER_GUARD_BITS = 32

# The default interval scanned for the sup of |F| is [0, DEFAULT_SCAN_END]
DEFAULT_SCAN_END = 10

DEFAULT_SCAN_SAMPLES = 10000
MIN_SCAN_SAMPLES = 1000

# The number of grid maxima refined by golden section search
SCAN_REFINEMENTS = 3
GOLDEN_ITERATIONS = 80

# The observed contraction is the largest of this many recent step ratios
CONTRACTION_WINDOW = 8

MAX_FACTORS = 1000000

# Past this many factors the product is carried as a sum of logarithms
LOG_SUM_THRESHOLD = 100000

# Other greenlets are given a chance to run this often
YIELD_INTERVAL = 1024


class RateResult(object):
    """
    The limit of u_k / rho^k along with how it was certified
    """

    def __init__(self, rho, limit, factors_used, tail_bound,
                 contraction=None, hand_bound=None, description=None):

        # The linear coefficient of the local map
        self.rho = rho

        # lim u_k / rho^k
        self.limit = limit

        self.factors_used = factors_used

        # A bound on the relative size of the product's unused tail
        self.tail_bound = tail_bound

        # The largest step ratio u_(j+1)/u_j observed at the end
        self.contraction = contraction

        # The contraction factor 1 - theta^2/2 available from first
        # principles for the cosine maps
        self.hand_bound = hand_bound

        self.description = description

    def to_dict(self, digits=None):
        if digits is None:
            digits = digits_for_precision(self.limit.precision_bits)

        content = {
            'rho': format_decimal(self.rho, digits),
            'limit': format_decimal(self.limit, digits),
            'factors_used': self.factors_used,
            'tail_bound': format_decimal(self.tail_bound, 6),
        }

        if self.description is not None:
            content['map'] = self.description

        if self.contraction is not None:
            content['contraction'] = format_decimal(self.contraction, 12)

        if self.hand_bound is not None:
            content['hand_bound'] = format_decimal(self.hand_bound, 12)

        return content

    def __repr__(self):
        return '<RateResult limit=%s factors=%d />' % (
            format_decimal(self.limit, 20), self.factors_used)


class BoundReport(object):
    """
    An empirical estimate of sup |F| over an interval.  This is the result
    of sampling; it is not a proof of the bound.
    """

    def __init__(self, sup_estimate, argmax_location, samples, interval):
        self.sup_estimate = sup_estimate
        self.argmax_location = argmax_location
        self.samples = samples

        # The tuple (start, end)
        self.interval = interval

    def to_dict(self, digits=12):
        return {
            'sup_estimate': format_decimal(self.sup_estimate, digits),
            'argmax_location': format_decimal(self.argmax_location, digits),
            'samples': self.samples,
            'interval': [
                format_decimal(self.interval[0], digits),
                format_decimal(self.interval[1], digits),
            ],
        }

    def __repr__(self):
        return '<BoundReport sup=%s at=%s samples=%d />' % (
            format_decimal(self.sup_estimate, 12),
            format_decimal(self.argmax_location, 12), self.samples)


def dottie(precision_bits=None):
    """
    Returns Dottie's number; the real root of cos(x) = x
    """
    if precision_bits is None:
        precision_bits = default_precision()

    if precision_bits < 64:
        raise PreconditionError(
            "Dottie's number requires a precision of at least 64 bits")

    return dottie_number(precision_bits)


@lru_cache(maxsize=64)
def _resolved(spec, precision_bits):
    """
    Returns the tuple (mu, rho, F(0)) of a map at the precision specified
    """
    mu = spec.fixed_point(precision_bits)
    taylor = spec.taylor_at_fixed_point(2, precision_bits)
    return mu, taylor[1], taylor[2]


def _working_precision(x, precision_bits):
    """
    The precision f(x) - rho*x must be carried at for its quotient by x^2
    to hold precision_bits; rounded up to a multiple of 64 so that the
    resolved fixed points can be shared between neighbouring x.
    """
    _, man, exp, bc = x.mpf
    lost = max(0, -(exp + bc)) if man else 0
    working = precision_bits + 2 * lost + REMAINDER_GUARD_BITS
    return ((working + 63) // 64) * 64


def local_rate(spec, precision_bits=None):
    """
    Returns rho; the linear coefficient of the local map
    """
    if precision_bits is None:
        precision_bits = default_precision()

    return _resolved(spec, precision_bits)[1]


def hand_bound(spec, precision_bits=None):
    """
    Returns the contraction factor 1 - theta^2/2 that bounds the step
    ratio of the cosine maps by hand (None for any other map).
    """
    if spec.kind != MapKind.COS_ONCE:
        return None

    theta = spec.fixed_point(precision_bits)
    return 1 - theta * theta / 2


def _remainder(spec, x, precision_bits):
    """
    Returns the tuple (F(x), f(x)); f(x) keeps DEFAULT_GUARD_BITS more
    than precision_bits so the orbit can be carried on from it.
    """
    if x.sign() < 0:
        raise DomainError(
            'the remainder function is only defined for x >= 0 (found %s)' %
            format_decimal(x, 12))

    if x.is_zero():
        _, _, F0 = _resolved(spec, precision_bits)
        return F0, BigReal(0, precision_bits)

    working = _working_precision(x, max(precision_bits, x.precision_bits))
    mu, rho, _ = _resolved(spec, working)

    s = x.with_precision(working)
    fx = spec.local(s, mu)
    F = (fx - rho * s) / (s * s)

    return F.with_precision(precision_bits), fx.with_precision(
        precision_bits + DEFAULT_GUARD_BITS)


def remainder_function(spec, x, precision_bits=None):
    """
    Returns F(x) = (f(x) - rho*x) / x^2 for the local map of spec.

    The singularity at x = 0 is removable; F(0) is the degree 2 Taylor
    coefficient.  The difference f(x) - rho*x is formed at a precision
    raised by the bits cancelled between its terms.
    """
    if precision_bits is None:
        precision_bits = default_precision()

    if not isinstance(x, BigReal):
        x = BigReal(x, precision_bits)

    return _remainder(spec, x, precision_bits)[0]


def _golden_maximum(func, lo, hi, iterations=GOLDEN_ITERATIONS):
    """
    Golden section search for a maximum of func on [lo, hi].  Returns the
    tuple (value, location) of the best point evaluated.
    """
    ratio = (BigReal(5, lo.precision_bits).sqrt() - 1) / 2

    a, b = lo, hi
    c = b - (b - a) * ratio
    d = a + (b - a) * ratio
    fc = func(c)
    fd = func(d)

    best = max((fc, c), (fd, d), key=lambda e: e[0])
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * ratio
            fc = func(c)
            if fc > best[0]:
                best = (fc, c)

        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * ratio
            fd = func(d)
            if fd > best[0]:
                best = (fd, d)

    return best


def bound_scan(spec, end=DEFAULT_SCAN_END, samples=DEFAULT_SCAN_SAMPLES,
               precision_bits=None, start=0):
    """
    Estimates sup |F| on [start, end].

    |F| is sampled on a uniform grid of samples intervals and the grid
    maxima are refined further by a golden section search on their
    neighbouring intervals.  The estimate is never smaller than any
    sampled value.
    """
    if precision_bits is None:
        precision_bits = 128

    samples = int(samples)
    if samples < MIN_SCAN_SAMPLES:
        raise PreconditionError(
            'a bound scan requires at least %d samples (found %d)' % (
                MIN_SCAN_SAMPLES, samples))

    start = BigReal(start, precision_bits)
    end = BigReal(end, precision_bits)
    if end <= start or start.sign() < 0:
        raise PreconditionError(
            'a bound scan requires an interval 0 <= start < end')

    def magnitude(x):
        return abs(_remainder(spec, x, precision_bits)[0])

    step = (end - start) / samples
    grid = []
    for i in range(samples + 1):
        x = start + step * i
        grid.append((magnitude(x), i))

        if i % YIELD_INTERVAL == 0:
            sleep(0)

    best_value, best_index = max(grid)
    best = (best_value, start + step * best_index)

    for value, i in sorted(grid, reverse=True)[:SCAN_REFINEMENTS]:
        lo = start + step * max(0, i - 1)
        hi = start + step * min(samples, i + 1)
        refined = _golden_maximum(magnitude, lo, hi)
        if refined[0] > best[0]:
            best = refined

    logger.info('sup |F| on [%s, %s] ~ %s at x = %s (%d samples)' % (
        format_decimal(start, 6), format_decimal(end, 6),
        format_decimal(best[0], 12), format_decimal(best[1], 12), samples))

    return BoundReport(best[0], best[1], samples, (start, end))


def _check_rate(spec, precision_bits):
    rho = local_rate(spec, precision_bits)
    if rho.sign() <= 0 or rho >= 1:
        raise PreconditionError(
            'a geometric rate requires 0 < rho < 1 (%s has rho = %s)' % (
                spec.description, format_decimal(rho, 12)))
    return rho


def partial_products(spec, u0, count, precision_bits=None):
    """
    Returns a list of (k, u_k, P_k) for k = 0 .. count where P_k is the
    product of the first k factors; u_k / rho^k = u0 * P_k holds for every
    entry.
    """
    if precision_bits is None:
        precision_bits = default_precision()

    rho = _check_rate(spec, precision_bits)

    u = BigReal(u0, precision_bits + DEFAULT_GUARD_BITS)
    product = BigReal(1, precision_bits)

    result = [(0, u.with_precision(precision_bits), product)]
    for k in range(1, int(count) + 1):
        F, fu = _remainder(spec, u, precision_bits)
        product = product * (1 + u.with_precision(precision_bits) * F / rho)
        u = fu
        result.append((k, u.with_precision(precision_bits), product))

    return result


def geometric_limit(spec, u0, target_digits=25, precision_bits=None,
                    bound=None):
    """
    Returns lim u_k / rho^k as a RateResult.

    The factors (1 + u_j F(u_j) / rho) are multiplied until the tail of
    the product is certified below 10^-(target_digits + 2) relative to the
    result.  With M = sup |F| and q the contraction factor (the larger of
    rho + M*u_j and the largest recently observed step ratio) the
    remaining factors change the product by no more than

        2 * M * u_j / (rho * (1 - q))

    in relative terms once M*u_j/rho is at most 1/2.

    M is taken from a bound scan on [0, u0] unless bound (a BoundReport or
    a value) is provided.
    """
    if precision_bits is None:
        precision_bits = precision_for_digits(target_digits)

    rho = _check_rate(spec, precision_bits)

    u = BigReal(u0, precision_bits + DEFAULT_GUARD_BITS)
    if u.sign() <= 0:
        raise PreconditionError('a geometric limit requires u0 > 0')

    if bound is None:
        bound = bound_scan(spec, end=u, samples=MIN_SCAN_SAMPLES,
                           precision_bits=min(precision_bits, 128))

    M = bound.sup_estimate if isinstance(bound, BoundReport) else bound
    M = BigReal(M, precision_bits)

    tolerance = BigReal(10, precision_bits) ** (-(int(target_digits) + 2)) \
        if target_digits else BigReal(1, precision_bits) / (
            2 ** (precision_bits - 8))

    logger.debug('Geometric limit of %s from %s; rho = %s, M = %s' % (
        spec.description, format_decimal(u, 20), format_decimal(rho, 20),
        format_decimal(M, 12)))

    product = BigReal(1, precision_bits)
    log_sum = None
    ratios = []
    tail = None
    contraction = None

    for j in range(MAX_FACTORS):
        F, fu = _remainder(spec, u, precision_bits)

        if fu >= u or fu.sign() <= 0:
            raise BasinError(
                'the orbit stopped contracting at factor %d (u = %s)' % (
                    j, format_decimal(u, 12)))

        factor = 1 + u.with_precision(precision_bits) * F / rho
        if log_sum is None:
            product = product * factor
            if j + 1 >= LOG_SUM_THRESHOLD:
                log_sum = product.ln()

        else:
            log_sum = log_sum + factor.ln()

        ratios.append((fu / u).with_precision(precision_bits))
        del ratios[:-CONTRACTION_WINDOW]
        contraction = max(ratios)

        u = fu
        step = M * u.with_precision(precision_bits) / rho
        q = max(rho + M * u.with_precision(precision_bits), contraction)
        if step * 2 <= 1 and q < 1:
            tail = step * 2 / (1 - q)
            if tail < tolerance:
                break

        if j % YIELD_INTERVAL == 0:
            sleep(0)

    else:
        raise ConvergenceError(
            'the product tail did not drop below %s within %d factors' % (
                format_decimal(tolerance, 6), MAX_FACTORS))

    if log_sum is not None:
        product = log_sum.exp()

    limit = BigReal(u0, precision_bits) * product

    logger.info('lim u_k/rho^k = %s after %d factor(s) (tail %s)' % (
        format_decimal(limit, digits_for_precision(precision_bits)), j + 1,
        format_decimal(tail, 4)))

    return RateResult(
        rho, limit, j + 1, tail,
        contraction=contraction,
        hand_bound=hand_bound(spec, precision_bits),
        description=spec.description)
