"""Backend selection for the two-qubit hot kernels.

Tries the compiled Cython extension first and falls back to the pure-Python
implementation; ``BACKEND`` records which one is active. Both expose the same
functions with identical numerics (see tests/test_kernels.py and
benchmarks/bench_kernels.py).
"""

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _kernels_py as _impl

    BACKEND = "python"

from . import _kernels_py as python_impl

impl = _impl

cond_entropy_measured_b = _impl.cond_entropy_measured_b
dephased_entropy_b = _impl.dephased_entropy_b
dephased_entropy_product = _impl.dephased_entropy_product
