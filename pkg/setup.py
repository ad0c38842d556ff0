from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension("mpoxtriage._split_c", sources=["src/mpoxtriage/_split_c.pyx"]),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    ),
)
