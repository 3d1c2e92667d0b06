import os

from setuptools import Extension, setup

# The compiled census/sieve kernel is optional: the package falls back to the
# pure-Python implementation in quadstab.kernels.pure when the extension is
# absent.  Set QUADSTAB_PURE=1 to skip building it.
ext_modules = []
if os.environ.get("QUADSTAB_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "quadstab.kernels._ccore",
                    ["src/quadstab/kernels/_ccore.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
