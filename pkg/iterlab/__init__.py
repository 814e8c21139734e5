# -*- coding: utf-8 -*-
#
# The Base Library used to make imports easier for users
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
__title__ = 'IterLab'
__version__ = '0.1.0'
__author__ = 'The IterLab Developers'
__license__ = 'LGPLv3'
__copyright__ = 'Copyright 2025 The IterLab Developers'

from .BigReal import BigReal
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .BigReal import digits_agreement
from .PowerSeries import PowerSeries
from .MapSpec import MapSpec
from .MapSpec import parse_map
from .AsymSeries import AsymSeries
from .CPoly import CPoly

__all__ = [
    'BigReal',
    'format_decimal',
    'parse_decimal',
    'digits_agreement',
    'PowerSeries',
    'MapSpec',
    'parse_map',
    'AsymSeries',
    'CPoly',
]
