"""Backend selection for the saturation hot loops.

The compiled Cython kernels are used when importable; otherwise the numpy
fallback takes over.  Set MONGEN_BACKEND=python to force the fallback, or
MONGEN_BACKEND=compiled to fail loudly when the extension is missing.
"""

import os

_choice = os.environ.get("MONGEN_BACKEND", "auto")

if _choice == "python":
    from mongen._accel import kernels_py as kernels
elif _choice == "compiled":
    from mongen._accel import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from mongen._accel import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from mongen._accel import kernels_py as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
