"""Backend selection for the transfer-matrix kernel.

The compiled extension is used when importable; set ``BRAIDLAB_PURE_PYTHON=1``
to force the numpy fallback.
"""

import os

from . import _transfer_py

if os.environ.get("BRAIDLAB_PURE_PYTHON", "") not in ("", "0"):
    assemble = _transfer_py.assemble
    BACKEND = "python"
else:
    try:
        from ._transfer_cy import assemble
        BACKEND = "cython"
    except ImportError:
        assemble = _transfer_py.assemble
        BACKEND = "python"

BACKENDS = {"python": _transfer_py.assemble}
if BACKEND == "cython":
    BACKENDS["cython"] = assemble
