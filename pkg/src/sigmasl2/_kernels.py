"""Backend selection for the polynomial kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  Set ``SIGMASL2_PURE=1`` to force the
fallback.  ``use()`` switches backends at runtime (benchmarks, tests).
"""

from __future__ import annotations

import contextlib
import os

from . import _pykernels

_NAMES = (
    "add_terms",
    "scale_terms",
    "mul_terms",
    "shift_terms",
    "unshift_terms",
    "reduce_root",
    "exact_div",
    "min_exponents",
)


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


compiled = _load_compiled()
ExponentOverflow = (_pykernels.ExponentOverflow,) + (
    (compiled.ExponentOverflow,) if compiled is not None else ()
)

BACKEND = ""


def _install(mod):
    global BACKEND
    g = globals()
    for name in _NAMES:
        g[name] = getattr(mod, name)
    BACKEND = mod.BACKEND


def available() -> list[str]:
    return ["python"] + (["cython"] if compiled is not None else [])


def set_backend(name: str) -> None:
    if name == "python":
        _install(_pykernels)
    elif name == "cython":
        if compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _install(compiled)
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def use(name: str):
    prev = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


if compiled is not None and not os.environ.get("SIGMASL2_PURE"):
    _install(compiled)
else:
    _install(_pykernels)
