"""Select the elimination kernels at import.

The compiled module is preferred; set ``POLYJOIN_PURE_PYTHON=1`` to force the
pure-Python fallback (the benchmark and the kernel tests use both).
"""
import os

from . import _pykernels

pykernels = _pykernels
ckernels = None

if not os.environ.get("POLYJOIN_PURE_PYTHON"):
    try:
        from . import _kernels as ckernels
    except ImportError:  # pragma: no cover - depends on the build
        ckernels = None

kernels = ckernels if ckernels is not None else pykernels
BACKEND = kernels.NAME


def rank_mod_p(matrix, p):
    return kernels.rank_mod_p(matrix, p)


def int_diagonal(matrix):
    if kernels is pykernels:
        return pykernels.int_diagonal(matrix)
    try:
        return kernels.int_diagonal(matrix)
    except OverflowError:
        return pykernels.int_diagonal(matrix)
