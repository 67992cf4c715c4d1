"""Integration-kernel selection: compiled extension or pure Python.

The compiled module is optional; when it failed to build or LHDEF_BACKEND
says otherwise, integration runs on the pure-Python reference path in
dynamics. LHDEF_BACKEND accepts "auto" (default), "compiled" and "python".
"""
from __future__ import annotations

import os
from typing import Optional

try:
    from . import _speedups
except ImportError:  # extension not built on this install
    _speedups = None


def compiled_available() -> bool:
    return _speedups is not None


def active_backend(override: Optional[str] = None) -> str:
    mode = (override or os.environ.get("LHDEF_BACKEND", "auto")).lower()
    if mode in ("auto", ""):
        return "compiled" if _speedups is not None else "python"
    if mode == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return "compiled"
    if mode == "python":
        return "python"
    raise ValueError(f"unknown backend {mode!r} (use auto, compiled or python)")


def kernel(override: Optional[str] = None):
    """The compiled kernel module, or None when running pure Python."""
    return _speedups if active_backend(override) == "compiled" else None
