import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MODFERMAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # fallback kernels are used at import time
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("modfermat._fp", ["src/modfermat/_fp.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
