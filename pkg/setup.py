"""Build script: compiles the optional scan kernel, falling back to pure Python.

The package is fully functional without the extension; ``gitwin._scan``
selects the numpy fallback at import time when the compiled module is
missing (or when GITWIN_FORCE_FALLBACK=1 is set).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/gitwin/_scan/_kernel.pyx",
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"gitwin: building without compiled scan kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
