"""Kernel backend selection.

The hot inner loops live in ``_impl`` (pure numpy, written in the numba
subset).  ``load_backend("numba")`` returns the same functions jit-compiled;
``load_backend("numpy")`` returns them untouched.  The active backend is
chosen once per process from the ``PETZAUG_BACKEND`` environment variable:

  auto   (default) use numba when it imports, else numpy
  numba  force the jit backend
  numpy  force the pure numpy fallback
"""

import os
from types import SimpleNamespace

from . import _impl

_KERNELS = ("weighted_state_sum", "pair_traces", "fixed_point_loop")
_cache = {}


def load_backend(name):
    """Return a namespace with the kernel functions for ``name``."""
    if name in _cache:
        return _cache[name]
    if name == "numpy":
        ns = SimpleNamespace(name="numpy", **{k: getattr(_impl, k) for k in _KERNELS})
    elif name == "numba":
        import numba

        jit = numba.njit(cache=True)
        ns = SimpleNamespace(
            name="numba", **{k: jit(getattr(_impl, k)) for k in _KERNELS}
        )
    else:
        raise ValueError(f"unknown backend {name!r} (expected 'numpy' or 'numba')")
    _cache[name] = ns
    return ns


def active_backend():
    """Backend selected by PETZAUG_BACKEND (resolved on first use)."""
    choice = os.environ.get("PETZAUG_BACKEND", "auto").lower()
    if choice == "auto":
        try:
            return load_backend("numba")
        except ImportError:
            return load_backend("numpy")
    return load_backend(choice)
