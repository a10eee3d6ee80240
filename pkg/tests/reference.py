"""Plain recursive reference implementations written from the recurrences.

Elements are (value, position) tuples so duplicates are totally ordered.
"""

import math


def keyed(seq):
    return [(float(v), i) for i, v in enumerate(seq, 1)]


def pick(items, rule):
    n = len(items)
    if rule == "classic":
        return items[0]
    if rule == "max2":
        return max(items[0], items[-1])
    if rule == "min2":
        return min(items[0], items[-1])
    trio = sorted([items[0], items[math.ceil(n / 2) - 1], items[-1]])
    return trio[1]


def quick(items, rule):
    """Comparisons of quicksort, r(s) = (n-1) + r(s_L) + r(s_R), and the output."""
    if not items:
        return 0, []
    p = pick(items, rule)
    left = [x for x in items if x < p]
    right = [x for x in items if x > p]
    cl, sl = quick(left, rule)
    cr, sr = quick(right, rule)
    return len(items) - 1 + cl + cr, sl + [p] + sr


def find(items, k, rule):
    p = pick(items, rule)
    left = [x for x in items if x < p]
    right = [x for x in items if x > p]
    here = len(items) - 1
    if len(left) == k - 1:
        return here, p
    if len(left) >= k:
        c, found = find(left, k, rule)
    else:
        c, found = find(right, k - len(left) - 1, rule)
    return here + c, found


def scan(items, rule):
    if not items:
        return 0
    p = pick(items, rule)
    return 1 + scan([x for x in items if x > p], rule)
