"""Build script for the optional compiled geo kernels.

The package works without the extension (a pure-numpy fallback is selected
at import time); building it just makes the hot loops faster.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "argonaut.geo._kernels",
        ["src/argonaut/geo/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
