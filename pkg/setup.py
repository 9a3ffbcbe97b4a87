import os

from setuptools import Extension, setup

# The scan kernel compiles to hearinglens._scanner; the package falls back to
# the pure-Python kernel when the extension is absent. Set
# HEARINGLENS_SKIP_NATIVE=1 to install without a compiler.
ext_modules = []
if not os.environ.get("HEARINGLENS_SKIP_NATIVE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("hearinglens._scanner", ["src/hearinglens/_scanner.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
