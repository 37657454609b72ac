"""Backend selection for the jump-chain kernel.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``GTRING_PURE_PYTHON`` is set to a non-empty value, the
pure-Python kernel is used.  Both produce identical trajectories.
"""

from __future__ import annotations

import os

from . import _simcore_py as python_backend

compiled_backend = None
if not os.environ.get("GTRING_PURE_PYTHON"):
    try:
        from . import _simcore as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

kernel = compiled_backend if compiled_backend is not None else python_backend
BACKEND = kernel.BACKEND

__all__ = ["kernel", "BACKEND", "python_backend", "compiled_backend"]
