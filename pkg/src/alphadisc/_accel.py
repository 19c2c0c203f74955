"""Backend switch for the compiled kernels.

Set ``ALPHADISC_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
The numba path is also skipped silently when numba is not installed.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba ships in the dev env
    numba = None

_FLAG = "ALPHADISC_DISABLE_NUMBA"

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get(_FLAG, "").strip().lower() not in {
    "1",
    "true",
    "yes",
    "on",
}


def njit(f=None, **options):
    """``numba.njit`` with caching, or the identity decorator without numba."""
    options.setdefault("cache", True)
    if numba is None:
        return (lambda g: g) if f is None else f
    if f is None:
        return lambda g: numba.njit(g, **options)
    return numba.njit(f, **options)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
