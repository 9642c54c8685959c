from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "feedkit._feedkit",
    sorted(glob("src/*.cpp")) + ["bindings/feedkit_py.cpp"],
    include_dirs=["include"],
    cxx_std=20,
)

setup(
    packages=["feedkit"],
    package_dir={"": "python"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
