"""Build hook for the optional compiled kernels.

Without a working compiler or Cython the package installs pure-Python and
``sigmasl2._kernels`` falls back automatically.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SIGMASL2_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("sigmasl2._ckernels", ["src/sigmasl2/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
