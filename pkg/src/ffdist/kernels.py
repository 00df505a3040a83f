"""Backend selection for the enumeration kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` twin.  Setting ``FFDIST_PURE_PYTHON=1`` forces
the fallback.
"""
import os

from . import _kernels_py

try:
    if os.environ.get("FFDIST_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"
_impl = BACKENDS[BACKEND]

count_chains = _impl.count_chains
count_paths = _impl.count_paths
first_path = _impl.first_path
count_stars = _impl.count_stars
