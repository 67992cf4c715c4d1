"""Build script: compiles the optional integration kernel.

The extension is a speedup, not a requirement; any build failure (missing
Cython, missing compiler) downgrades to a pure-Python install instead of
aborting.
"""
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: skipping compiled kernel ({exc}); "
                  "falling back to pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to pure Python", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; installing without the "
              "compiled kernel", file=sys.stderr)
        return []
    return cythonize(
        [Extension("lhdef._speedups", ["src/lhdef/_speedups.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
