"""Edge-isoperimetry of the binary and ternary cubes.

With h(i) the digit sum of i and f(l, m) = sum of h(i) for l <= i < m, the
prefix set {0..m-1} maximises the number of induced edges among m-vertex
sets of Q^n (base 2) and 3Q^n (base 3), and that maximum is f(0, m). The
minimum edge boundary follows from regularity: d*m - 2*f(0, m) with
d = n for Q^n and d = 2n for 3Q^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import CapacityError, PreconditionError
from .graph import Graph

ENUMERATION_CAP = 10**8


def _check_base(base: int) -> None:
    if base not in (2, 3):
        raise PreconditionError(f"base must be 2 or 3, got {base}")


def digit_sum(i: int, base: int) -> int:
    if i < 0:
        raise PreconditionError("digit sums are defined for i >= 0")
    s = 0
    while i:
        i, d = divmod(i, base)
        s += d
    return s


def _prefix_sum(m: int, base: int) -> int:
    # f(0, m) by counting how often each digit value occupies each position
    total = 0
    w = 1
    while w < m:
        block = w * base
        full, rem = divmod(m, block)
        hi, lo = divmod(rem, w)
        total += full * w * base * (base - 1) // 2
        total += w * hi * (hi - 1) // 2 + hi * lo
        w = block
    return total


def f_sum(l: int, m: int, base: int, method: str = "closed") -> int:
    """Sum of digit sums h(i) over l <= i < m."""
    _check_base(base)
    if not 0 <= l <= m:
        raise PreconditionError(f"need 0 <= l <= m, got l={l}, m={m}")
    if method == "closed":
        return _prefix_sum(m, base) - _prefix_sum(l, base)
    if method == "linear":
        return sum(digit_sum(i, base) for i in range(l, m))
    raise PreconditionError(f"unknown method {method!r}")


def _check_size(base: int, n: int, m: int, lo: int) -> None:
    _check_base(base)
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if not lo <= m <= base**n:
        raise PreconditionError(f"m={m} outside {lo}..{base**n}")


def max_induced_edges(base: int, n: int, m: int) -> int:
    """e_n(m): most edges induced by m vertices of the base-``base`` n-cube."""
    _check_size(base, n, m, 0)
    return f_sum(0, m, base)


def min_edge_boundary(base: int, n: int, m: int) -> int:
    """b(m): fewest edges leaving an m-vertex set of Q^n or 3Q^n."""
    _check_size(base, n, m, 2)
    degree = n if base == 2 else 2 * n
    return degree * m - 2 * f_sum(0, m, base)


def induced_edges(g: Graph, vertices) -> int:
    mask = 0
    for x in vertices:
        mask |= 1 << x
    adj = g.adjacency_bits
    return sum((adj[x] & mask).bit_count() for x in vertices) // 2


def edge_boundary(g: Graph, vertices) -> int:
    inside = set(vertices)
    return sum(1 for a, b in g.edges if (a in inside) != (b in inside))


def oracle_max_induced_edges(g: Graph, m: int, cap: int = ENUMERATION_CAP) -> int:
    """Exhaustive maximum of e(H) over all m-vertex subsets of ``g``."""
    if not 0 <= m <= g.n:
        raise PreconditionError(f"m={m} outside 0..{g.n}")
    count = comb(g.n, m)
    if count > cap:
        raise CapacityError(f"C({g.n},{m}) = {count} subsets exceeds cap {cap}")
    adj = g.adjacency_bits
    best = 0
    for subset in combinations(range(g.n), m):
        mask = 0
        for x in subset:
            mask |= 1 << x
        e = sum((adj[x] & mask).bit_count() for x in subset) // 2
        if e > best:
            best = e
    return best


@dataclass(frozen=True)
class IsoProfile:
    base: int
    n: int
    entries: tuple[tuple[int, int, int], ...]  # (m, e_max, b_min)


def iso_profile(base: int, n: int) -> IsoProfile:
    size = base**n
    rows = tuple(
        (m, max_induced_edges(base, n, m), min_edge_boundary(base, n, m))
        for m in range(2, size + 1)
    )
    return IsoProfile(base, n, rows)


def prefix_table(base: int, size: int) -> np.ndarray:
    """F[m] = f(0, m) for m = 0..size, via a running sum of digit sums."""
    _check_base(base)
    x = np.arange(size, dtype=np.int64)
    h = np.zeros(size, dtype=np.int64)
    while x.any():
        h += x % base
        x //= base
    return np.concatenate([[0], np.cumsum(h)])


def window_bound_violations(base: int, limit: int) -> list[tuple[int, int]]:
    """Pairs (l, k) with 1 <= k <= l <= limit and f(l, l+k) < f(0, k) + k."""
    F = prefix_table(base, 2 * limit + 1)
    out = []
    for l in range(1, limit + 1):
        k = np.arange(1, l + 1)
        bad = k[F[l + k] - F[l] < F[k] + k]
        out.extend((l, int(x)) for x in bad)
    return out
