# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``.

Arithmetic is unsigned 64-bit; callers must respect ``SCAN_MAX`` and
``MERGE_MAX`` (enforced by ``sqtri.kernels``).
"""

from libc.math cimport sqrt
from libc.stdint cimport uint64_t

SCAN_MAX = 4000000000
MERGE_MAX = 1 << 62
SIDES_MAX = 1 << 16


def scan_triangular_squares(uint64_t start, uint64_t stop):
    cdef list found = []
    cdef uint64_t k, tri, root, sq, nxt
    if stop < start:
        return found
    k = start
    tri = k * (k + 1) // 2
    root = <uint64_t>sqrt(<double>tri)
    while root * root > tri:
        root -= 1
    while (root + 1) * (root + 1) <= tri:
        root += 1
    sq = root * root
    nxt = sq + 2 * root + 1
    while k <= stop:
        while nxt <= tri:
            root += 1
            sq = nxt
            nxt += 2 * root + 1
        if sq == tri:
            found.append(k)
        k += 1
        tri += k
    return found


def merge_polygonal(uint64_t sides1, uint64_t sides2, uint64_t limit):
    cdef list out = []
    cdef uint64_t v1 = 1, v2 = 1
    cdef uint64_t d1 = sides1 - 1, d2 = sides2 - 1
    cdef uint64_t s1 = sides1 - 2, s2 = sides2 - 2
    while v1 <= limit and v2 <= limit:
        if v1 == v2:
            out.append(v1)
            v1 += d1
            d1 += s1
            v2 += d2
            d2 += s2
        elif v1 < v2:
            v1 += d1
            d1 += s1
        else:
            v2 += d2
            d2 += s2
    return out
