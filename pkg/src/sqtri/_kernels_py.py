"""Pure-Python kernels; the reference for the compiled ``_kernels`` module."""

import math


def scan_triangular_squares(start, stop):
    """Indices k in [start, stop] whose triangular number is a perfect square.

    The floor root of T_k is advanced incrementally as T_k grows, so no
    square roots are taken inside the loop.
    """
    found = []
    if stop < start:
        return found
    k = start
    tri = k * (k + 1) // 2
    root = math.isqrt(tri)
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


def merge_polygonal(sides1, sides2, limit):
    """Values <= limit common to two polygonal families, starting at n = 1.

    Two-pointer merge; each family is walked by its first differences
    P(m, n+1) - P(m, n) = (m-2)n + 1.
    """
    out = []
    v1 = v2 = 1
    d1 = sides1 - 1
    d2 = sides2 - 1
    s1 = sides1 - 2
    s2 = sides2 - 2
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
