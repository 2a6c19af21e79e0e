"""Pick the compiled search kernel when available.

Set ``HATGUESS_PURE_PYTHON=1`` to force the pure-Python kernel.
"""

import os

BACKEND = "python"

if os.environ.get("HATGUESS_PURE_PYTHON", "") not in ("", "0"):
    from hatguess import _kernel_py as kernel
else:
    try:
        from hatguess import _kernel as kernel

        BACKEND = "cython"
    except ImportError:
        from hatguess import _kernel_py as kernel

__all__ = ["BACKEND", "kernel"]
