"""Backend selection for the graph kernels.

The compiled extension is used when it imports; setting the environment
variable LOCALCOLORING_PURE=1 forces the pure-Python fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("LOCALCOLORING_PURE"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

bfs_layers = _impl.bfs_layers
bfs_full_order = _impl.bfs_full_order
power_csr = _impl.power_csr
cv_step = _impl.cv_step
greedy_sweep = _impl.greedy_sweep
girth = _impl.girth
growth_violation = _impl.growth_violation


def backends():
    """Map of backend name to module, for parity tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
