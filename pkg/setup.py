from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        ["src/varlagr/kernels/_kernels.pyx"],
        language_level=3,
    ),
)
