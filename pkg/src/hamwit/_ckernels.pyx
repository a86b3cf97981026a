# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Fixed-width ball-counting kernels.

Same contracts as ``hamwit._pykernels`` but restricted to n <= MAX_BITS so
every count fits in an unsigned 64-bit integer.
"""

ctypedef unsigned long long u64

cdef enum:
    WIDTH = 62

MAX_BITS = WIDTH

# _cum[m][j] = sum_{i<=j} C(m, i), saturating at j >= m
cdef u64 _cum[WIDTH + 1][WIDTH + 1]


cdef void _build_table():
    cdef u64 row[WIDTH + 1]
    cdef u64 nxt[WIDTH + 1]
    cdef int m, j
    cdef u64 acc
    for j in range(WIDTH + 1):
        row[j] = 0
    row[0] = 1
    for m in range(WIDTH + 1):
        acc = 0
        for j in range(WIDTH + 1):
            acc += row[j]
            _cum[m][j] = acc
        nxt[0] = 1
        for j in range(1, WIDTH + 1):
            nxt[j] = row[j - 1] + row[j]
        for j in range(WIDTH + 1):
            row[j] = nxt[j]


_build_table()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline u64 _bsum(int m, int j) nogil:
    if j < 0:
        return 0
    if j > m:
        j = m
    return _cum[m][j]


cdef u64 _count_below(int n, u64 a, int d, u64 z) nogil:
    cdef u64 total = 0
    cdef int mism = 0
    cdef int i, shift, m
    cdef u64 zb, ab
    if z >= (<u64>1 << n):
        return _bsum(n, d)
    for i in range(n):
        shift = n - 1 - i
        zb = (z >> shift) & 1
        ab = (a >> shift) & 1
        if zb:
            m = mism + <int>ab
            if m <= d:
                total += _bsum(shift, d - m)
        mism += <int>(zb ^ ab)
        if mism > d:
            break
    return total


cdef inline u64 _rank_upto(int n, u64 a, int d, u64 z) nogil:
    return _count_below(n, a, d, z) + (1 if _popcount(z ^ a) <= d else 0)


def prefix_count(int n, u64 a, int d, u64 s, int slen):
    cdef int mism = _popcount(s ^ (a >> (n - slen)))
    if mism > d:
        return 0
    return _bsum(n - slen, d - mism)


def count_below(int n, u64 a, int d, z):
    if z >= (<u64>1 << n):
        return _bsum(n, d)
    return _count_below(n, a, d, <u64>z)


def rank_upto(int n, u64 a, int d, u64 z):
    return _rank_upto(n, a, d, z)


def unrank(int n, u64 a, int d, u64 u, u64 i):
    cdef u64 lo = 0, hi = u - 1, mid
    with nogil:
        while lo < hi:
            mid = lo + ((hi - lo) >> 1)
            if _rank_upto(n, a, d, mid) >= i:
                hi = mid
            else:
                lo = mid + 1
    return lo
