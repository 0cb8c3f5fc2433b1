"""Backend selection for the enumeration kernel.

The compiled ``_fpenum`` extension is used when it imports; set
``ARAKELOV_H0_PURE=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
enumerate_block = _kernels_py.enumerate_block

if os.environ.get("ARAKELOV_H0_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _fpenum
    except ImportError:
        pass
    else:
        enumerate_block = _fpenum.enumerate_block
        BACKEND = "cython"

python_enumerate_block = _kernels_py.enumerate_block
