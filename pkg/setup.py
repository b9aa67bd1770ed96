#!/usr/bin/env python3
from setuptools import setup
import os

version_path = os.path.join(
    os.path.dirname(__file__),
    'jetviber',
    'version.txt'
)
with open(version_path, 'r') as version_file:
    jetviber_version = version_file.read().strip()

setup(
    name             = 'jetviber',
    version          = jetviber_version,
    packages         = ['jetviber', 'jetviber.utils'],
    package_dir      = {'jetviber': 'jetviber'},
    package_data     = {
        'jetviber': [
            'version.txt',
            'sessions/*.jet'
        ]
    },
    python_requires  = '>=3.9.0',
    install_requires = [
        'numpy >= 1.17.0',
        'regex',
    ],
    entry_points     = {
        'console_scripts': ['jetviber=jetviber.cli:main'],
    },
    description      = 'variational bivectors and Schouten brackets on PDE jet spaces',
    long_description = 'jetviber - exact jet-space calculus for bivectors on differential equations',
    author           = 'the jetviber developers',
    license          = 'The MIT license',
    platforms        = 'any that supports python 3.9',
    classifiers      = [
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'License :: OSI Approved :: MIT License',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: POSIX',
        'Operating System :: Unix',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
    ]
)
