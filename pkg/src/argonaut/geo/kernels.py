"""Kernel implementation selection: compiled extension with numpy fallback.

Set ``ARGONAUT_PURE_PYTHON=1`` to force the fallback even when the compiled
extension is available (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("ARGONAUT_PURE_PYTHON"):
    impl = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        impl = _kernels_py
        COMPILED = False

nearest_index = impl.nearest_index
interp4d = impl.interp4d
haversine_km = impl.haversine_km
haversine_nearest = impl.haversine_nearest
windrose_count = impl.windrose_count

IMPLEMENTATION = impl.IMPLEMENTATION


def available_implementations():
    """(name, module) pairs for every importable kernel implementation."""
    impls = [("python", _kernels_py)]
    try:
        from . import _kernels

        impls.append(("compiled", _kernels))
    except ImportError:
        pass
    return impls
