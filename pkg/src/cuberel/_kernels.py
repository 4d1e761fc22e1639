"""Compiled inner loops. Every kernel is a pure function of its arguments."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def tally_connected_subsets(n, eu, ev, lo, hi, out):
    """Add, for every edge mask in [lo, hi), one to out[popcount] when the
    spanning subgraph on those edges is connected."""
    parent = np.empty(n, np.int64)
    for mask in range(lo, hi):
        k = 0
        t = mask
        while t:
            t &= t - 1
            k += 1
        if k < n - 1:
            continue
        for i in range(n):
            parent[i] = i
        comps = n
        t = mask
        e = 0
        while t and comps > 1:
            if t & 1:
                a = _find(parent, eu[e])
                b = _find(parent, ev[e])
                if a != b:
                    parent[a] = b
                    comps -= 1
            t >>= 1
            e += 1
        if comps == 1:
            out[k] += 1


@njit(cache=True, nogil=True)
def percolation_trial(n, eu, ev, keep, half):
    """Union-find over kept edges.

    Returns (connected, isolated vertex count, has a component whose size s
    satisfies 2 <= s <= half, kept edge count).
    """
    parent = np.empty(n, np.int64)
    size = np.ones(n, np.int64)
    deg = np.zeros(n, np.int64)
    for i in range(n):
        parent[i] = i
    comps = n
    kept = 0
    for e in range(len(eu)):
        if keep[e]:
            kept += 1
            x = eu[e]
            y = ev[e]
            deg[x] += 1
            deg[y] += 1
            a = _find(parent, x)
            b = _find(parent, y)
            if a != b:
                if size[a] < size[b]:
                    a, b = b, a
                parent[b] = a
                size[a] += size[b]
                comps -= 1
    isolated = 0
    for i in range(n):
        if deg[i] == 0:
            isolated += 1
    middle = False
    if comps > 1:
        for i in range(n):
            if parent[i] == i and size[i] >= 2 and size[i] <= half:
                middle = True
                break
    return comps == 1, isolated, middle, kept


@njit(cache=True, nogil=True)
def walk_milestones(indptr, indices, start, steps_out, uniforms):
    """Simple random walk from ``start``; steps_out[j-1] receives the number of
    transitions after which j distinct non-start vertices have been seen.

    ``uniforms`` supplies one draw per transition; returns how many were used,
    or -1 if they ran out before every milestone was reached.
    """
    n = len(indptr) - 1
    seen = np.zeros(n, np.bool_)
    seen[start] = True
    target = len(steps_out)
    found = 0
    x = start
    t = 0
    while found < target:
        if t >= len(uniforms):
            return -1
        d = indptr[x + 1] - indptr[x]
        k = int(uniforms[t] * d)
        if k == d:
            k = d - 1
        x = indices[indptr[x] + k]
        t += 1
        if not seen[x]:
            seen[x] = True
            steps_out[found] = t
            found += 1
    return t
