"""Hot quadrature kernels with backend selection at import time.

The compiled Cython extension is preferred; the numpy reference backend is a
drop-in replacement when the extension was not built.  ``BACKEND`` records
which one is active; ``benchmarks/bench_kernels.py`` compares the two.
"""

from . import _ref

try:
    from . import _fastkern as _impl
    BACKEND = "compiled"
except ImportError:          # extension not built: pure-python install
    _impl = _ref
    BACKEND = "python"

fc_integrand = _impl.fc_integrand
coth_half = _ref.coth_half

__all__ = ["fc_integrand", "coth_half", "BACKEND"]
