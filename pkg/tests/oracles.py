"""Slow, obviously-correct reference implementations used by the tests.

Nothing here touches the bitmask internals of the package; orders are
plain sets of name pairs.
"""

from __future__ import annotations

import itertools


def closure(elements, pairs):
    """Reflexive-transitive closure by naive fixpoint iteration."""
    rel = {(x, x) for x in elements} | set(pairs)
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def is_antisymmetric(rel):
    return all(a == b or (b, a) not in rel for (a, b) in rel)


def longest_chain_below(elements, rel):
    """Height of each element: length of the longest strict chain ending at it."""
    height = {}

    def h(x):
        if x not in height:
            lower = [y for y in elements if y != x and (y, x) in rel]
            height[x] = 1 + max((h(y) for y in lower), default=-1)
        return height[x]

    for x in elements:
        h(x)
    return height


def nonmono_pairs(elements, rel_m, rel_l, f):
    return {(a, b) for a in elements for b in elements if (a, b) in rel_m and (f[a], f[b]) not in rel_l}


def fold_right(op, comps, x):
    """op(c1(x), op(c2(x), ... op(c_{k}(x), c_{k+1}(x))))."""
    acc = comps[-1][x]
    for c in reversed(comps[:-1]):
        acc = op(c[x], acc)
    return acc


def cube_points(n):
    return list(itertools.product((0, 1), repeat=n))


def truth_table(fn, n):
    return "".join(str(int(bool(fn(*p)))) for p in cube_points(n))


def implies(a, b):
    return int((not a) or b)


def brute_marginals(p):
    """Marginals by summing over the 8 boolean subject types explicitly."""
    x1 = x2 = x3 = z = 0.0
    for n1, n2, n3 in cube_points(3):
        w = p[4 * n1 + 2 * n2 + n3]
        x1 += w * n1
        x2 += w * n2
        x3 += w * n3
        z += w * implies(implies(n3, n2), n1)
    return x1, x2, x3, z
