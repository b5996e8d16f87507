"""Kernel backend selection.

The compiled Cython core is preferred; the pure-python fallback is used when
the extension is unavailable or when FRACTALATOM_PURE is set to a non-empty
value other than "0". Both expose the same two callables.
"""

import os

__all__ = ["BACKEND", "backend", "action_quadrature", "shoot_log_grid"]

if os.environ.get("FRACTALATOM_PURE", "").strip() not in ("", "0"):
    from . import _fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "python"

action_quadrature = _impl.action_quadrature
shoot_log_grid = _impl.shoot_log_grid


def backend():
    """Name of the active kernel backend: "compiled" or "python"."""
    return BACKEND
