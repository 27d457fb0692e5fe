"""Build script for the optional compiled kernel.

The package works without the extension (a numpy/scipy fallback is selected
at import time), so a missing C toolchain or Cython must not break the
install.  We therefore mark the extension optional and swallow cythonize
failures.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cmpatterns._kernels._core",
                ["src/cmpatterns/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - exercised only without Cython
    print(f"cmpatterns: skipping compiled kernel ({exc!r}); pure fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)
