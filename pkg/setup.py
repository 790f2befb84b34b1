#!/usr/bin/env python3

"""setuptools installer script for kfourteen."""

from setuptools import setup, find_packages

setup(
    name='kfourteen',
    version='0.1.0',
    license='Apache-2.0',
    description='Exact construction and cross-verification of rank-14 '
                'lattice-polarized K3 surfaces.',
    author='Felix Büttner',

    packages=find_packages(exclude=['tests', 'tests.*']),
    package_data={'kfourteen': ['config/config.json',
                                'curvegraph/graphs.json']},

    install_requires=['sympy>=1.14'],
    tests_require=['pytest', 'pytest-cov'],
    entry_points={'console_scripts': ['kfourteen = kfourteen.app:main']},
)
