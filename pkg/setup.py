"""Build the optional compiled kernels.

If Cython or a C compiler is missing, the package installs without the
extension and falls back to the pure-Python kernels at import time.
"""
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: could not build {ext.name} ({exc}); using pure Python")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("varfun._cfast", ["src/varfun/_cfast.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
