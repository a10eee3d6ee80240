"""Compiled counting kernels.

Every kernel works on an int64 array of distinct ranks (0..n-1).  Ranks
encode the (value, position) order of the original sequence, so all value
comparisons reduce to integer comparisons and ties never occur here.

Rule codes: 0 classic, 1 median-of-three, 2 max-of-two, 3 min-of-two.
"""

import numba
import numpy as np

CLASSIC = 0
MEDIAN_OF_THREE = 1
MAX_OF_TWO = 2
MIN_OF_TWO = 3


@numba.njit(cache=True, nogil=True)
def pick(a, lo, hi, rule):
    """Index in a[lo:hi] of the pivot chosen by `rule` (segment nonempty)."""
    last = hi - 1
    if rule == CLASSIC:
        return lo
    if rule == MAX_OF_TWO:
        return lo if a[lo] >= a[last] else last
    if rule == MIN_OF_TWO:
        return lo if a[lo] <= a[last] else last
    # middle is the ceil(m/2)-th entry, 1-based
    m = hi - lo
    mid = lo + (m + 1) // 2 - 1
    x = a[lo]
    y = a[mid]
    z = a[last]
    # equal ranks only happen when positions coincide, which then also
    # means the lower position wins
    if (x <= y and y <= z) or (z <= y and y <= x):
        med = y
    elif (y <= x and x <= z) or (z <= x and x <= y):
        med = x
    else:
        med = z
    if a[lo] == med:
        return lo
    if a[mid] == med:
        return mid
    return last


@numba.njit(cache=True, nogil=True)
def quicksort(a, rule):
    """Sort `a` in place by stable-partition quicksort.

    Returns (comparisons, pivots, depth).
    """
    n = a.shape[0]
    if n == 0:
        return 0, 0, 0
    buf = np.empty_like(a)
    stack = np.empty((n + 1, 3), dtype=np.int64)
    top = 0
    stack[0, 0] = 0
    stack[0, 1] = n
    stack[0, 2] = 1
    top = 1
    comparisons = 0
    pivots = 0
    depth = 0
    while top > 0:
        top -= 1
        lo = stack[top, 0]
        hi = stack[top, 1]
        level = stack[top, 2]
        m = hi - lo
        if m <= 0:
            continue
        pivots += 1
        if level > depth:
            depth = level
        if m == 1:
            continue
        comparisons += m - 1
        p = pick(a, lo, hi, rule)
        pv = a[p]
        i = lo
        j = hi - 1
        for t in range(lo, hi):
            if t == p:
                continue
            v = a[t]
            if v < pv:
                buf[i] = v
                i += 1
            else:
                buf[j] = v
                j -= 1
        for t in range(lo, i):
            a[t] = buf[t]
        a[i] = pv
        # right side was written back to front
        for t in range(hi - 1 - i):
            a[i + 1 + t] = buf[hi - 1 - t]
        stack[top, 0] = i + 1
        stack[top, 1] = hi
        stack[top, 2] = level + 1
        top += 1
        stack[top, 0] = lo
        stack[top, 1] = i
        stack[top, 2] = level + 1
        top += 1
    return comparisons, pivots, depth


@numba.njit(cache=True, nogil=True)
def find(a, k, rule):
    """Hoare's find for the k-th smallest (1-based) rank; clobbers `a`.

    Returns (rank, comparisons, pivots, depth).
    """
    buf = np.empty_like(a)
    lo = 0
    hi = a.shape[0]
    comparisons = 0
    pivots = 0
    while True:
        m = hi - lo
        pivots += 1
        comparisons += m - 1
        p = pick(a, lo, hi, rule)
        pv = a[p]
        w = lo
        r = 0
        for t in range(lo, hi):
            if t == p:
                continue
            v = a[t]
            if v < pv:
                a[w] = v
                w += 1
            else:
                buf[r] = v
                r += 1
        smaller = w - lo
        if smaller == k - 1:
            return pv, comparisons, pivots, pivots
        if smaller >= k:
            hi = w
        else:
            for t in range(r):
                a[lo + t] = buf[t]
            hi = lo + r
            k -= smaller + 1


@numba.njit(cache=True, nogil=True)
def scan(a, rule):
    """Scan maxima of `a`; clobbers `a`. Returns (count, comparisons)."""
    hi = a.shape[0]
    count = 0
    comparisons = 0
    while hi > 0:
        count += 1
        comparisons += hi - 1
        p = pick(a, 0, hi, rule)
        pv = a[p]
        w = 0
        for t in range(hi):
            v = a[t]
            if v > pv:
                a[w] = v
                w += 1
        hi = w
    return count, comparisons
