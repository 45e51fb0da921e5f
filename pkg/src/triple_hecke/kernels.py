"""Kernel lane selection.

The hot inner loops (multiplicative sieve assembly, compensated partial
sums) exist twice: a Cython extension (triple_hecke._kernels) and a pure
numpy/Python fallback (triple_hecke._kernels_py).  The compiled lane is
preferred when importable; set TRIPLE_HECKE_PURE_PYTHON=1 to force the
fallback.  benchmarks/bench_kernels.py compares the two.
"""

import os

from . import _kernels_py

if os.environ.get("TRIPLE_HECKE_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

primes_up_to = _kernels_py.primes_up_to
assemble_multiplicative = _impl.assemble_multiplicative
prefix_sums_at = _impl.prefix_sums_at


def backend_name():
    """Which lane is active: 'compiled' or 'python'."""
    return _impl.BACKEND
