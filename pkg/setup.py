"""Build script: compiles the optional row-reduction kernel.

The extension is marked optional; if the build fails (no compiler, no
Cython) the package still installs and falls back to the pure-Python
kernel in dskrv._kernels.pure.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "dskrv._kernels._ffge",
                ["src/dskrv/_kernels/_ffge.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
