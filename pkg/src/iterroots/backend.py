"""Selects the modular-series kernel backend at import time.

The compiled extension is preferred when it is importable; setting the
environment variable ``ITERROOTS_PURE`` (to any nonempty value) forces the
pure-Python kernels, which is useful for debugging and for benchmarking the
two implementations against each other.
"""

import os

from . import _kernels_py

if os.environ.get("ITERROOTS_PURE"):
    _impl = _kernels_py
    BACKEND = "pure"
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "pure"

mul_mod = _impl.mul_mod
compose_mod = _impl.compose_mod
iterate_mod = _impl.iterate_mod
pow_table_mod = _impl.pow_table_mod

# Largest modulus the fixed-width kernels accept (products must fit in 64 bits).
KERNEL_MOD_MAX = 2**31 - 1


def backend_name() -> str:
    """Which kernel implementation is active: "compiled" or "pure"."""
    return BACKEND
