"""Build script for the optional compiled kernel core.

The package is fully functional without the extension: textaug.kernels
falls back to the numpy implementations when `textaug._speedups` is not
importable. Build in place with:

    python setup.py build_ext --inplace
"""

import os

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:  # pure-python install
    numpy = None
    cythonize = None


def extensions():
    if cythonize is None or os.environ.get("TEXTAUG_SKIP_EXT"):
        return []
    ext = Extension(
        "textaug._speedups",
        ["src/textaug/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
