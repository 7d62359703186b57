"""Kernel backend selection: compiled extension if present, numpy otherwise.

`sheet_roots(a2, c0, lam)` is the hot primitive of the whole library (every
g-function / parametrix evaluation goes through it), so an optional Cython
implementation is provided.  Both backends produce identical results to
roundoff; `benchmarks/bench_kernels.py` compares their throughput.
"""
from . import _pykernels

try:  # pragma: no cover - depends on whether the extension was built
    from . import _cykernels as _impl
except ImportError:  # pragma: no cover
    _impl = _pykernels

BACKEND = _impl.BACKEND
sheet_roots = _impl.sheet_roots
cubic_roots = _pykernels.cubic_roots


def use_backend(name):
    """Force a backend ('numpy' or 'cython'); used by the benchmark/tests."""
    global BACKEND, sheet_roots
    if name == "numpy":
        BACKEND, sheet_roots = _pykernels.BACKEND, _pykernels.sheet_roots
    elif name == "cython":
        if _impl.BACKEND != "cython":
            raise RuntimeError("compiled kernels are not available")
        BACKEND, sheet_roots = _impl.BACKEND, _impl.sheet_roots
    else:
        raise ValueError(f"unknown backend {name!r}")
    return BACKEND
