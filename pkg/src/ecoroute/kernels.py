"""Kernel selection.

Uses the compiled ``_speedups`` extension when it was built, otherwise the
pure-Python reference in ``_kernels``. Set ``ECOROUTE_PURE_PYTHON=1`` to
force the fallback.
"""
import os

from . import _kernels as pure

try:
    if os.environ.get("ECOROUTE_PURE_PYTHON", "").strip() not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _speedups as compiled
except ImportError:
    compiled = None

backend = compiled if compiled is not None else pure
BACKEND_NAME = "compiled" if compiled is not None else "python"

dijkstra = backend.dijkstra
encode_ints = backend.encode_ints
decode_ints = backend.decode_ints
