"""Build the optional Cython kernels.

The compiled module is an accelerator only: if Cython or a C compiler is
missing, the build continues and ``ecoroute.kernels`` falls back to the
pure-Python implementation at import.
"""
from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: failed to build {ext.name} ({exc})")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        return []
    from setuptools import Extension

    return cythonize(
        [
            Extension(
                "ecoroute._speedups",
                ["src/ecoroute/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
