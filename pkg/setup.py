from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# numpy/Python implementations in triple_hecke._kernels_py when the
# extension cannot be built.
ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "triple_hecke._kernels",
                ["src/triple_hecke/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
