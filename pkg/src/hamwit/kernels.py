"""Backend selection for the ball-counting kernels.

The compiled extension handles strings of up to 62 bits with machine
integers; anything longer, or any run with ``HAMWIT_PURE_PYTHON=1``, goes
through the pure-Python implementation.
"""

import os

from hamwit import _pykernels as _py

try:
    from hamwit import _ckernels as _c
except ImportError:  # extension not built
    _c = None

if os.environ.get("HAMWIT_PURE_PYTHON", "") not in ("", "0"):
    _c = None

BACKEND = "cython" if _c is not None else "python"
_LIMIT = _c.MAX_BITS if _c is not None else -1


def prefix_count(n, a, d, s, slen):
    if n <= _LIMIT:
        return _c.prefix_count(n, a, d, s, slen)
    return _py.prefix_count(n, a, d, s, slen)


def count_below(n, a, d, z):
    if n <= _LIMIT:
        return _c.count_below(n, a, d, z)
    return _py.count_below(n, a, d, z)


def rank_upto(n, a, d, z):
    if n <= _LIMIT:
        return _c.rank_upto(n, a, d, z)
    return _py.rank_upto(n, a, d, z)


def unrank(n, a, d, u, i):
    if n <= _LIMIT:
        return _c.unrank(n, a, d, u, i)
    return _py.unrank(n, a, d, u, i)
