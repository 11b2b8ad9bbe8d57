"""Build the optional Cython kernels; the package works without them."""
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("rescodim._kernels", ["src/rescodim/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
