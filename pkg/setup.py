import os
from setuptools import setup, find_packages


def read(filename):
    return open(os.path.join(os.path.dirname(__file__), filename)).read()

def readlines(filename):
    with open(os.path.join(os.path.dirname(__file__), filename)) as open_file:
        return [l.split("==")[0].strip() for l in open_file.readlines() if l.strip()]


setup(
    name='kval',
    version='0.1.0',
    author='See AUTHORS.md',
    description='kval is an open-source library written in Python for exact arithmetic, power '
                'series and analysis over an infinite-rank Krull-valued field. ',
    license='GNU General Public License v3 (GPLv3), see LICENSE.md',
    keywords='valuation non-archimedean power series inverse function',
    packages=find_packages(exclude=["tests"]),
    long_description=read('README.md'),
    install_requires=readlines('requirements/production.txt'),
    entry_points={
        'console_scripts': ['kval = kval.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: POSIX',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
