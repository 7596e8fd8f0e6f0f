"""Backend selection for the crossing kernels.

The compiled ``_core`` extension is used when it imports; otherwise, or when
the ``LCADC_PURE_PYTHON`` environment variable is set to a non-empty value
other than ``0``, the pure-Python ``_core_py`` module is used. Both expose
``eval_point`` and ``scan_crossing`` with identical semantics.
"""
import os

from . import _core_py

_FORCE_PURE = os.environ.get("LCADC_PURE_PYTHON", "") not in ("", "0")

try:
    from . import _core as _compiled
except ImportError:
    _compiled = None

if _compiled is not None and not _FORCE_PURE:
    backend = _compiled
    BACKEND_NAME = "cython"
else:
    backend = _core_py
    BACKEND_NAME = "python"

SINE = _core_py.SINE
TRIANGLE = _core_py.TRIANGLE
SAMPLED = _core_py.SAMPLED
NOT_FOUND = _core_py.NOT_FOUND
FOUND = _core_py.FOUND
TOL_FAILED = _core_py.TOL_FAILED


def compiled_available() -> bool:
    return _compiled is not None


def get_backend(name: str | None = None):
    """Return a kernel module by name (``"cython"``/``"python"``), or the active one."""
    if name is None:
        return backend
    if name == "python":
        return _core_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernel extension lcadc._core is not built")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")
