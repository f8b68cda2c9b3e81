"""Hot kernels of the automorphism search.

Two interchangeable backends exist: numba-compiled loops and vectorised
numpy.  ``CIRCSTAB_KERNELS=numpy`` forces the numpy path; numba is used
otherwise when it imports cleanly.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _numpy

BACKENDS: dict[str, ModuleType] = {"numpy": _numpy}

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None
else:
    BACKENDS["numba"] = _numba


def default_backend_name() -> str:
    name = os.environ.get("CIRCSTAB_KERNELS", "").strip().lower()
    if name in BACKENDS:
        return name
    return "numba" if "numba" in BACKENDS else "numpy"


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: env-selected)."""
    if name is None:
        name = default_backend_name()
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}") from None
