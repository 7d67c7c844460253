import os

from setuptools import setup

ext_modules = []
if os.environ.get("MEETTREE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/meettree/_kernels/_fast.pyx"],
            language_level=3,
        )
    except ImportError:
        # Pure-Python fallback kernels are always available; the compiled
        # extension is an optional accelerator.
        ext_modules = []

setup(ext_modules=ext_modules)
