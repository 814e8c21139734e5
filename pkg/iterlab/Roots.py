# -*- coding: utf-8 -*-
#
# Safeguarded Newton iteration over a bracket
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

from .BigReal import BigReal
from .BigReal import format_decimal
from .Errors import RootSelectionError
from .Errors import ConvergenceError

import logging
from .Logging import ITERLAB_ENGINE
logger = logging.getLogger(ITERLAB_ENGINE)

# The number of iterations allowed before we give up
DEFAULT_MAX_ITERATIONS = 400


def safeguarded_newton(func, lo, hi, tolerance, guess=None,
                       max_iterations=DEFAULT_MAX_ITERATIONS):
    """
    Find the root of func bracketed between lo and hi using a combination
    of Newton-Raphson and bisection.

    func(x) must return the tuple (f, df); the value and the derivative
    at x.  The signs of f(lo) and f(hi) must differ (a zero at either end
    is accepted as the root).

    A Newton step is taken whenever it lands inside the bracket and
    shrinks the step at least by half compared to the one before it;
    otherwise the bracket is bisected.  The bracket is maintained on every
    evaluation so the iteration can never escape it.

    The root is returned once a step smaller than tolerance was taken or
    f evaluates to exactly zero.
    """
    f_lo, _ = func(lo)
    f_hi, _ = func(hi)

    if f_lo.is_zero():
        return lo

    if f_hi.is_zero():
        return hi

    if f_lo.sign() == f_hi.sign():
        raise RootSelectionError(
            'the interval [%s, %s] does not bracket a root' % (
                format_decimal(lo, 12), format_decimal(hi, 12)))

    # Orient the bracket so that f(xlo) < 0 < f(xhi)
    if f_lo.sign() > 0:
        lo, hi = hi, lo

    xlo, xhi = lo, hi
    x = (xlo + xhi) / 2 if guess is None else guess
    dxold = abs(hi - lo)
    dx = dxold

    f, df = func(x)
    for iteration in range(1, max_iterations + 1):
        if f.is_zero():
            return x

        # Bisect if Newton would leave the bracket or is not shrinking
        # fast enough
        if df.is_zero() or \
                ((x - xhi) * df - f) * ((x - xlo) * df - f) >= 0 or \
                abs(f * 2) > abs(dxold * df):
            dxold = dx
            dx = (xhi - xlo) / 2
            x = xlo + dx

        else:
            dxold = dx
            dx = f / df
            x = x - dx

        if abs(dx) < tolerance:
            logger.debug(
                'Newton converged after %d iteration(s) to %s' % (
                    iteration, format_decimal(x, 20)))
            return x

        f, df = func(x)
        if f.sign() < 0:
            xlo = x
        else:
            xhi = x

    raise ConvergenceError(
        'no convergence after %d iterations (last step %s)' % (
            max_iterations, format_decimal(abs(dx), 6)))


def dottie_number(precision_bits):
    """
    Returns the real root of cos(x) = x resolved to the precision
    specified (bracketed by [0.7, 0.75]).
    """
    lo = BigReal('0.7', precision_bits)
    hi = BigReal('0.75', precision_bits)
    tolerance = BigReal(1, precision_bits) / (2 ** (precision_bits - 4))

    def func(x):
        return x.cos() - x, -x.sin() - 1

    return safeguarded_newton(func, lo, hi, tolerance)
