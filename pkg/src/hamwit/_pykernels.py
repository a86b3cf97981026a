"""Pure-Python ball-counting kernels on plain ints (arbitrary precision).

Strings are n-bit integers, most significant bit first. ``a`` is the ball
center, ``d`` the radius.
"""

from hamwit.core import binomial_sum

MAX_BITS = None  # no width limit


def prefix_count(n, a, d, s, slen):
    """Members of the radius-d ball around ``a`` whose first ``slen`` bits are ``s``."""
    mism = (s ^ (a >> (n - slen))).bit_count()
    if mism > d:
        return 0
    return binomial_sum(n - slen, d - mism)


def count_below(n, a, d, z):
    """Ball members with integer value strictly less than ``z`` (0 <= z <= 2^n)."""
    if z >= 1 << n:
        return binomial_sum(n, d)
    total = 0
    mism = 0
    for i in range(n):
        shift = n - 1 - i
        zb = (z >> shift) & 1
        ab = (a >> shift) & 1
        if zb:
            # prefix z_1..z_{i}0 differs from a at bit i iff a has a 1 there
            m = mism + ab
            if m <= d:
                total += binomial_sum(shift, d - m)
        mism += zb ^ ab
        if mism > d:
            break
    return total


def rank_upto(n, a, d, z):
    """Ball members with value <= z."""
    inside = 1 if (z ^ a).bit_count() <= d else 0
    return count_below(n, a, d, z) + inside


def unrank(n, a, d, u, i):
    """Value of the i-th (1-based) ball member below ``u``, by binary search."""
    lo, hi = 0, u - 1
    while lo < hi:
        mid = (lo + hi) >> 1
        if rank_upto(n, a, d, mid) >= i:
            hi = mid
        else:
            lo = mid + 1
    return lo
