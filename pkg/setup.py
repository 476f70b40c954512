from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install without the compiled kernels; the package
    # falls back to the numpy implementations at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "houghskew._kernels",
                ["src/houghskew/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
