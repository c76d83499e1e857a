from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy

    ext_modules = cythonize(
        [Extension(
            "mongen._accel._kernels",
            ["src/mongen/_accel/_kernels.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )],
        language_level=3,
    )
except ImportError:
    # The package works on the numpy fallback when Cython is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)
