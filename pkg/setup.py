from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("koufpt._speedups", sources=["src/koufpt/_speedups.pyx"])],
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )
except ImportError:
    # No Cython: install the pure-Python package; the fallback kernels are used.
    ext_modules = []

setup(ext_modules=ext_modules)
