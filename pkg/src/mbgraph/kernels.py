"""Backend selection for the reachability kernels.

The compiled extension is used when it was built; otherwise the pure-Python
implementation takes over.  Both expose ``reach`` and ``blanket_flags`` with
identical semantics, wrapped here behind a graph-level interface.
Setting ``MBGRAPH_BACKEND=python`` forces the fallback at import.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = ("compiled", "python") if _ckernels is not None else ("python",)
_active = os.environ.get("MBGRAPH_BACKEND") or BACKENDS[0]
if _active not in BACKENDS:
    raise ImportError(f"MBGRAPH_BACKEND={_active!r} is not one of {BACKENDS}")


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available; choose from {BACKENDS}")
    _active = name


class use_backend:
    """Context manager that switches backend temporarily."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        self.prev = _active
        set_backend(self.name)

    def __exit__(self, *exc):
        set_backend(self.prev)


def reach_ids(g, sources, cond: bytearray) -> bytearray:
    """Mask of vertices outside ``cond`` with an active trail from ``sources``."""
    if _active == "compiled":
        out = _ckernels.reach(*g.csr, g.directed,
                              np.fromiter(sources, dtype=np.int32), cond)
        return bytearray(out)
    return _pykernels.reach(g.succ, g.pred, g.directed, sources, cond)


def blanket_flags(g, sources, candidates, cond: bytearray) -> list[bool]:
    if _active == "compiled":
        flags = _ckernels.blanket_flags(*g.csr, g.directed,
                                        np.fromiter(sources, dtype=np.int32),
                                        np.asarray(candidates, dtype=np.int32), cond)
        return [bool(f) for f in flags]
    return [bool(f) for f in _pykernels.blanket_flags(g.succ, g.pred, g.directed,
                                                      sources, candidates, cond)]
