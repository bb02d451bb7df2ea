#!/usr/bin/env python
# -*- encoding: utf-8 -*-
"""Setup package
"""
from glob import glob
from os.path import basename, splitext

from setuptools import find_packages
from setuptools import setup


def readme():
    """Read README contents
    """
    with open('README.md') as f:
        return f.read()


setup(
    name='hypdomain',
    use_scm_version={'fallback_version': '0.1.0'},
    license='MIT License',
    description='Dirichlet domains of closed hyperbolic surfaces from fundamental polygons',
    long_description=readme(),
    long_description_content_type="text/markdown",
    packages=find_packages('src'),
    package_dir={'': 'src'},
    py_modules=[splitext(basename(path))[0] for path in glob('src/*.py')],
    package_data={'hypdomain': ['script_config.ini']},
    include_package_data=True,
    zip_safe=False,
    classifiers=[
        # complete classifier list: http://pypi.python.org/pypi?%3Aaction=list_classifiers
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords=[
        'hyperbolic', 'surface', 'dirichlet', 'delaunay', 'fuchsian'
    ],
    setup_requires=[
        'setuptools_scm'
    ],
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
        'networkx>=2.4',
        'pandas>=1.0',
        'matplotlib>=3.1',
        'tqdm>=4.40',
    ],
    extras_require={
        'tests': ['pytest>=6.0'],
        'vis': ['seaborn>=0.11'],
    },
    entry_points={
        'console_scripts': [
            'hypdomain = hypdomain.cli:main',
        ]
    },
)
