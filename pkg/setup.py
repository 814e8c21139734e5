#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# SetupTools Script
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

from setuptools import setup
from setuptools import find_packages

setup(
    name='iterlab',
    version='0.1.0',
    description='Asymptotics of slowly converging iterated maps',
    long_description=open('README.md').read() +
    '\n\n' + open('HISTORY.rst').read(),
    long_description_content_type='text/markdown',
    keywords='iteration asymptotic expansion fixed point arbitrary precision',
    author='The IterLab Developers',
    packages=find_packages(exclude=('tests', )),
    package_data={
        'iterlab': ['var/*', 'plugins/cli/*.py'],
    },
    include_package_data=True,
    scripts=['bin/il.py', ],
    data_files=[('share/iterlab', ['config.yaml', ]), ],
    test_suite='tests',
    install_requires=open('requirements.txt').readlines(),
    python_requires='>=3.8',
    classifiers=(
        'Natural Language :: English',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: '
        'GNU Lesser General Public License v3 (LGPLv3)',
    ),
)
