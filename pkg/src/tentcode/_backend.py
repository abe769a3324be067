"""Pick the walk kernel: compiled if importable, else pure Python.

Set ``TENTCODE_PURE=1`` to force the fallback.
"""

import os

from . import _walk_py

if os.environ.get("TENTCODE_PURE"):
    kernel = _walk_py
else:
    try:
        from . import _walk as kernel
    except ImportError:
        kernel = _walk_py

NAME = "cython" if kernel is not _walk_py else "python"
BitSource = kernel.BitSource
WalkCore = kernel.WalkCore
