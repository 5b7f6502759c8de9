#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
"""Minimal cone stability and calibration workbench

   Conestab decides strict stability of minimal cones from the spectrum
   of their links, checks calibration conditions on cone tangent planes,
   follows the decay of cut-off Jacobi fields on complex cones and
   searches for closed and co-closed forms on cones over flat links.
"""
import glob
import os
import sys
import setuptools

classifiers = """\
Development Status :: 4 - Beta
Environment :: Console
Intended Audience :: Education
Intended Audience :: Science/Research
License :: OSI Approved :: BSD License
Natural Language :: English
Operating System :: OS Independent
Programming Language :: Python :: 3
Programming Language :: Python :: 3.8
Programming Language :: Python :: 3.9
Programming Language :: Python :: 3.10
Programming Language :: Python :: 3.11
Programming Language :: Python :: 3.12
Topic :: Scientific/Engineering :: Mathematics
"""


if sys.version_info[:2] < (3, 8):
    print("ERROR: this package requires Python 3.8 or later!")
    sys.exit(1)

params = {
    'install_requires': ['numpy>=1.20', 'scipy>=1.7'],
    'zip_safe': False  # this is due to the conf dir
}

doclines = [x.strip() for x in (__doc__ or '').split('\n') if x]

params.update(
    {'name': 'conestab',
     'version': open(os.path.join('conestab', '__init__.py')).read().split('\'')[1],
     'description': doclines[0],
     'long_description': ' '.join(doclines[1:]),
     'maintainer': 'Conestab developers',
     'author': 'Conestab developers',
     'license': 'BSD',
     'platforms': ['any'],
     'classifiers': [x for x in classifiers.split('\n') if x],
     'packages': setuptools.find_packages(exclude=['tests']),
     'include_package_data': True,
     'entry_points': {
        'console_scripts': [
            'conestab-classify = conestab.commands.classify:main',
            'conestab-sweep = conestab.commands.sweep:main',
            'conestab-calibration = conestab.commands.calibration:main',
            'conestab-variation-decay = conestab.commands.decay:main',
            'conestab-forms = conestab.commands.forms:main',
        ]
     }}
)

# install sample run configurations as data_files
params['data_files'] = [
    (os.path.join('conestab', 'conf'),
     glob.glob(os.path.join('conf', '*.json')))
]

setuptools.setup(**params)
