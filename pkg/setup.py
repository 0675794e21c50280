from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are an optional speedup; the package falls back to
# the pure-Python implementations when the extension is absent.
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "iterroots._kernels_c",
                ["src/iterroots/_kernels_c.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
