import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LOCALCOLORING_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
        import numpy as np

        ext_modules = cythonize(
            [Extension("localcoloring._ckernels",
                       ["src/localcoloring/_ckernels.pyx"],
                       include_dirs=[np.get_include()])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        # no Cython: the pure-Python kernels are used
        ext_modules = []

setup(ext_modules=ext_modules)
