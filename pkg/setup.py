from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(["src/distmind/_accel.pyx"], language_level="3"),
)
