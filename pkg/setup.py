from setuptools import setup, find_packages

NAME = 'isograd'
# do not use x.x.x-dev.  things complain.  instead use x.x.xdev
VERSION = '0.1.0dev'
RELEASE = 'dev' not in VERSION

setup(name=NAME,
      version=VERSION,
      description='Exact classification of filtered q-difference modules '
                  'with fixed graded part',
      license='MIT',
      packages=find_packages(),
      package_data={'isograd': ['data/*.cfg', 'data/*.json']},
      install_requires=['numpy', 'pandas', 'sympy>=1.12', 'jsonschema>=4'],
      tests_require=['hypothesis'],
      entry_points={'console_scripts': ['isograd = isograd.cli:main']})
