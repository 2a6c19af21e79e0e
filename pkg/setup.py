from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "hatguess._kernel",
        ["src/hatguess/_kernel.pyx"],
        language="c++",
        extra_compile_args=["-O2"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
