"""Pick the compiled kernels when available, else the numpy fallback.

Set ``SLABEIG_BACKEND=python`` to force the fallback, or ``compiled`` to
fail loudly when the extension is missing.
"""
import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

_choice = os.environ.get("SLABEIG_BACKEND", "auto").lower()

if _choice == "python":
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        if _choice == "compiled":
            raise
        log.debug("compiled kernels unavailable, using numpy fallback")
        kernels = _pykernels

NAME = "compiled" if kernels is not _pykernels else "python"


def available():
    """Mapping of backend name to kernel module for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["compiled"] = _kernels
    return out
