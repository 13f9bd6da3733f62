"""Backend selection for the cyclotomic kernels.

The compiled ``_cykernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module is used.  Setting the environment
variable ``MFKIT_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from mfkit import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MFKIT_PURE_PYTHON", "") in ("", "0"):
    try:
        from mfkit import _cykernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

Table = _impl.Table
mulmod = _impl.mulmod
fold_reduce = _impl.fold_reduce
galois = _impl.galois
cross_update = _impl.cross_update

__all__ = ["BACKEND", "Table", "mulmod", "fold_reduce", "galois", "cross_update"]
