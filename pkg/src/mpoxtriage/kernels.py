"""Split-scan backend selection.

The compiled extension is preferred when importable; the NumPy fallback is
always available. Both produce bit-identical results, so switching backends
never changes a trained model. MPOXTRIAGE_BACKEND=python|compiled pins the
choice at import time; set_backend switches it at runtime (benchmarks, tests).
"""

from __future__ import annotations

import os

from . import _split_py

_BACKENDS = {"python": _split_py.best_split}
try:
    from . import _split_c

    _BACKENDS["compiled"] = _split_c.best_split
except ImportError:
    pass

_requested = os.environ.get("MPOXTRIAGE_BACKEND", "").strip().lower()
if _requested and _requested not in _BACKENDS:
    raise RuntimeError(
        f"MPOXTRIAGE_BACKEND={_requested!r} is not available; choices: {sorted(_BACKENDS)}"
    )
_active = _requested or ("compiled" if "compiled" in _BACKENDS else "python")


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}")
    _active = name


def best_split(*args):
    """Dispatch to the active backend's split scan."""
    return _BACKENDS[_active](*args)
