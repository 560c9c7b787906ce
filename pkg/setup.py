# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

from __future__ import print_function
from setuptools import setup, find_packages
from codecs import open
from os import path
import sys

here = path.abspath(path.dirname(__file__))

if sys.version_info < (3, 6):
    print('Sorry, only python>=3.6 is supported', file=sys.stderr)
    sys.exit(1)

with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='anseroid',
    version='0.1.0',

    description='constraint-driven flocking simulator where V formations emerge from wake energy',
    long_description=long_description,
    long_description_content_type='text/markdown',

    license='MPL2',

    packages=find_packages(exclude=['tests']),
    install_requires=[
        'numpy',
        'scipy',
        'joblib',
    ],
    python_requires='>=3.6',

    entry_points={
        'console_scripts' : [
            'anseroid=anseroid:main',
        ],
    },
)
