"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import); the extension only accelerates the hot cubic-solve /
sheet-assignment kernel. Build failures are therefore non-fatal.
"""
import numpy
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tau34._kernels._cykernels",
                ["src/tau34/_kernels/_cykernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )
except Exception as exc:  # pragma: no cover - cython/compiler missing
    print(f"tau34: building without compiled kernels ({exc})")
    ext_modules = []

setup(ext_modules=ext_modules)
