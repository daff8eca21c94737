"""Hypervolume kernel backend selection.

Hypervolume and hypervolume-improvement calls dominate the runtime of the
archive-insertion loop (the discount bisection alone issues dozens per
insertion), so the hot kernels live in a compiled Cython extension with a
pure-numpy fallback. The compiled backend is preferred when importable;
``MOQD_KERNELS=python`` (or ``compiled``/``auto``) overrides the choice.
Run ``benchmarks/bench_kernels.py`` to compare the two.
"""

import os

_requested = os.environ.get("MOQD_KERNELS", "auto").strip().lower() or "auto"
if _requested not in {"auto", "compiled", "python"}:
    raise ImportError(
        f"MOQD_KERNELS must be 'auto', 'compiled', or 'python', got {_requested!r}"
    )

if _requested == "python":
    from . import _hv_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _hv_cy as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _hv_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

dominates = _impl.dominates
hypervolume = _impl.hypervolume
hvi = _impl.hvi

__all__ = ["BACKEND", "dominates", "hypervolume", "hvi"]
