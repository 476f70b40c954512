"""Kernel backend selection, resolved once at import.

The compiled extension is preferred when it is built. Set
``HOUGHSKEW_BACKEND=py`` to force the numpy fallback or
``HOUGHSKEW_BACKEND=ext`` to fail loudly if the extension is missing.
"""

import os

from . import _kernels_py

_choice = os.environ.get("HOUGHSKEW_BACKEND", "auto").lower()
if _choice not in ("auto", "ext", "py"):
    raise ImportError(
        f"HOUGHSKEW_BACKEND must be 'auto', 'ext' or 'py', not {_choice!r}"
    )

_ext = None
if _choice != "py":
    try:
        from . import _kernels as _ext
    except ImportError:
        if _choice == "ext":
            raise

if _ext is not None:
    BACKEND = "ext"
    fht_butterfly = _ext.fht_butterfly
    rotate_bilinear = _ext.rotate_bilinear
else:
    BACKEND = "py"
    fht_butterfly = _kernels_py.fht_butterfly
    rotate_bilinear = _kernels_py.rotate_bilinear
