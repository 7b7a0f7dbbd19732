"""Build the optional compiled kernels.

The package works without them: ``slabeig._backend`` falls back to the
numpy implementation when the extension cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SLABEIG_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "slabeig._kernels",
                    ["src/slabeig/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-fno-math-errno"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
