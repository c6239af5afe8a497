"""Backend selection for the integer row-reduction kernel.

Imports the compiled kernel when present, falling back to the pure
Python twin.  Set NCF_PURE_PYTHON=1 to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("NCF_PURE_PYTHON"):
    from ._rrefpy import rref

    BACKEND = "python"
else:
    try:
        from ._rrefc import rref  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        from ._rrefpy import rref

        BACKEND = "python"

__all__ = ["rref", "BACKEND"]
