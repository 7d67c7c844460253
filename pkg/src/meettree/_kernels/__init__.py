"""Kernel backend selection: compiled extension if built, else pure Python.

Set MEETTREE_PURE=1 to force the reference backend (used by the benchmark
and by tests that compare the two).
"""

import os

if os.environ.get("MEETTREE_PURE") == "1":
    from ._ref import BACKEND, EQ, GT, INC, LT, closure_set, is_le, lca, lca_table, rel_code
else:
    try:
        from ._fast import BACKEND, EQ, GT, INC, LT, closure_set, is_le, lca, lca_table, rel_code
    except ImportError:
        from ._ref import BACKEND, EQ, GT, INC, LT, closure_set, is_le, lca, lca_table, rel_code

__all__ = [
    "BACKEND",
    "EQ",
    "LT",
    "GT",
    "INC",
    "lca",
    "is_le",
    "rel_code",
    "closure_set",
    "lca_table",
]
