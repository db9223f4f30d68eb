"""Kernel backend selection: compiled extension if importable, numpy fallback
otherwise.  STRETCHCOUNT_PURE=1 forces the fallback (used by the benchmark and
the backend-parity tests)."""

import os

if os.environ.get("STRETCHCOUNT_PURE"):
    from . import _ref as kernels

    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from . import _ref as kernels

        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "pure"
