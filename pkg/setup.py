"""Build script for the optional compiled propagation kernel.

The package is fully functional without the extension (a vectorized NumPy
fallback is selected at import time); building it just makes campaign runs
several times faster.  ``pip install -e . --no-build-isolation`` compiles it
when Cython and a C compiler are present.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qutritchar.kernels._fast",
                ["src/qutritchar/kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3", "-fopenmp", "-fcx-limited-range"],
                extra_link_args=["-fopenmp"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
