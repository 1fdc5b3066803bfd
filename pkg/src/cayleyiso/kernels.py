"""Pick the search kernel backend.

The compiled ``_ckernels`` module is used when it was built; otherwise the
numpy fallback in ``_pykernels``.  Setting ``CAYLEYISO_PURE_PYTHON=1`` forces
the fallback (useful for cross-checking the two).
"""

import os

from . import _pykernels

INF32 = _pykernels.INF32


def _load(force_pure: bool):
    if force_pure:
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


_mod, BACKEND = _load(os.environ.get("CAYLEYISO_PURE_PYTHON", "") not in ("", "0"))


def get_backend(name: str | None = None):
    """Return the kernel module called ``name`` ("cython" or "python"), or the active one."""
    if name is None:
        return _mod
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


build_table = _mod.build_table
dfs_table = _mod.dfs_table
dfs_local = _mod.dfs_local
sweep_holes = _mod.sweep_holes
