"""Hot-loop kernels with backend selection.

``mode_sum`` synthesizes one length-p sample vector from aliased modes and
dominates the runtime of a recovery run. A Cython implementation is used
when the compiled extension is importable; otherwise a vectorized numpy
fallback takes over. Set MSFOURIER_KERNEL=numpy|native to force a backend
(forcing "native" raises if the extension is missing).
"""

import os

from . import pyfallback

try:
    from . import _native
except ImportError:
    _native = None

_forced = os.environ.get("MSFOURIER_KERNEL", "").strip().lower()
if _forced == "numpy":
    BACKEND = "numpy"
elif _forced == "native":
    if _native is None:
        raise ImportError("MSFOURIER_KERNEL=native but the compiled kernel is unavailable")
    BACKEND = "native"
else:
    BACKEND = "native" if _native is not None else "numpy"

mode_sum = _native.mode_sum if BACKEND == "native" else pyfallback.mode_sum


def available_backends() -> dict:
    """Importable mode_sum implementations keyed by backend name."""
    impls = {"numpy": pyfallback.mode_sum}
    if _native is not None:
        impls["native"] = _native.mode_sum
    return impls
