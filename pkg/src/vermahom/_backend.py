"""Select the term kernels at import: compiled if built, else pure Python.

Set ``VH_PURE=1`` to force the pure-Python kernels.
"""

import os

BACKEND = "python"

if os.environ.get("VH_PURE", "") not in ("1", "true", "yes"):
    try:
        from vermahom._kernels import add_terms, div_terms, mul_terms, scale_terms, sub_terms

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from vermahom._kernels_py import add_terms, div_terms, mul_terms, scale_terms, sub_terms

__all__ = ["BACKEND", "add_terms", "div_terms", "mul_terms", "scale_terms", "sub_terms"]
