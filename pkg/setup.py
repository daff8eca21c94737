"""Build script for the compiled hypervolume kernels.

The extension is optional: if Cython or a C compiler is unavailable the
package installs anyway and falls back to the pure-numpy kernels at import.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("moqd: Cython not available, skipping compiled kernels", file=sys.stderr)
        return []
    return cythonize(
        [Extension("moqd._kernels._hv_cy", ["src/moqd/_kernels/_hv_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=_extensions())
