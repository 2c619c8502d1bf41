"""Selects the compiled transform kernels, falling back to pure Python.

The hot loop of an inversion evaluates the Laplace transform at dozens of
complex abscissas, each requiring a quartic solve plus coefficient assembly.
A Cython extension (`koufpt._speedups`) fuses that path; when it is not built,
or when KOUFPT_PURE_PYTHON is set to a nonempty value other than "0", the
pure-Python composition in `transforms` is used instead.  Both paths implement
identical semantics, including the stable branches near coincident roots.
"""

from __future__ import annotations

import os

kernel = None
if os.environ.get("KOUFPT_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _speedups as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = None


def backend_name() -> str:
    return "python" if kernel is None else "cython"
