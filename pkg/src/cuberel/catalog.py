"""Isomorphism classes of small graphs.

The canonical form of a graph is the smallest upper-triangle adjacency
bit-string (pairs in lexicographic order, first pair most significant)
over all vertex orderings compatible with a colour-refinement partition.
The partition is isomorphism invariant, so the minimum is a complete
invariant; without it the search is the full n! scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial

import numpy as np

from .errors import CapacityError, PreconditionError
from .graph import Graph, is_connected

MAX_VERTICES = 8


@lru_cache(maxsize=None)
def _weights(n: int) -> np.ndarray:
    pairs = list(combinations(range(n), 2))
    w = np.zeros((n, n), dtype=np.int64)
    top = len(pairs) - 1
    for k, (a, b) in enumerate(pairs):
        w[a, b] = w[b, a] = 1 << (top - k)
    return w


def _refine(g: Graph) -> list[int]:
    colors = [int(d) for d in g.degrees]
    adj = g.adjacency
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(g.n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


@lru_cache(maxsize=256)
def _block_perms(sizes: tuple[int, ...]) -> np.ndarray:
    """Every labelling that keeps block i on labels start_i..start_i+size_i-1.

    Row k gives the label of the j-th vertex in block-sorted order."""
    blocks = []
    start = 0
    for s in sizes:
        blocks.append([tuple(start + x for x in p) for p in permutations(range(s))])
        start += s
    rows = [sum(choice, ()) for choice in product(*blocks)]
    return np.array(rows, dtype=np.int64)


def canonical_code(g: Graph, refine: bool = True) -> tuple[int, tuple[int, ...]]:
    """(code, labelling) where relabelling ``g`` by the labelling yields the
    canonical graph whose adjacency bit-string is ``code``."""
    n = g.n
    if n > MAX_VERTICES:
        raise CapacityError(f"canonical forms limited to n <= {MAX_VERTICES}")
    if n == 0:
        return 0, ()
    colors = _refine(g) if refine else [0] * n
    order = sorted(range(n), key=lambda v: colors[v])
    sizes = tuple(sum(1 for v in order if colors[v] == c) for c in sorted(set(colors)))
    rows = _block_perms(sizes)
    perm = np.empty_like(rows)
    perm[:, order] = rows
    if g.m == 0:
        return 0, tuple(perm[0].tolist())
    w = _weights(n)
    codes = w[perm[:, g.u], perm[:, g.v]].sum(axis=1)
    best = int(np.argmin(codes))
    return int(codes[best]), tuple(perm[best].tolist())


def canonical_form(g: Graph) -> Graph:
    _, labelling = canonical_code(g)
    return Graph(g.n, sorted(g.relabel(labelling).edges))


def graph_from_code(n: int, code: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    top = len(pairs) - 1
    return Graph(n, [pr for k, pr in enumerate(pairs) if code >> (top - k) & 1])


def complement(g: Graph) -> Graph:
    present = g.edge_set()
    return Graph(g.n, [pr for pr in combinations(range(g.n), 2) if pr not in present])


@lru_cache(maxsize=None)
def _levels(n: int, top: int) -> tuple[tuple[int, ...], ...]:
    """Canonical codes of all graphs on n vertices with 0..top edges, by
    adding one edge at a time to every class of the previous level."""
    levels = [(0,)]
    pairs = list(combinations(range(n), 2))
    for _ in range(top):
        seen = set()
        for code in levels[-1]:
            g = graph_from_code(n, code)
            present = g.edge_set()
            for pr in pairs:
                if pr in present:
                    continue
                h = Graph(n, list(g.edges) + [pr])
                seen.add(canonical_code(h)[0])
        levels.append(tuple(sorted(seen)))
    return tuple(levels)


@dataclass(frozen=True)
class GraphClassCatalog:
    n: int
    m: int
    connected_only: bool
    representatives: tuple[Graph, ...]

    def __len__(self) -> int:
        return len(self.representatives)


def _check_bounds(n: int, m: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise CapacityError(f"enumeration supports 1 <= n <= {MAX_VERTICES}, got {n}")
    if not 0 <= m <= comb(n, 2):
        raise PreconditionError(f"m={m} outside 0..{comb(n, 2)}")


def all_classes(n: int, m: int) -> list[Graph]:
    """One canonical graph per isomorphism class of G(n, m)."""
    _check_bounds(n, m)
    total = comb(n, 2)
    if m > total - m:
        base = _levels(n, total - m)[total - m]
        graphs = [canonical_form(complement(graph_from_code(n, c))) for c in base]
        return sorted(graphs, key=lambda h: canonical_code(h)[0])
    return [graph_from_code(n, c) for c in _levels(n, m)[m]]


def enumerate_classes(n: int, m: int, connected_only: bool = True) -> GraphClassCatalog:
    reps = [g for g in all_classes(n, m) if not connected_only or is_connected(g)]
    return GraphClassCatalog(n, m, connected_only, tuple(reps))


def enumerate_classes_bruteforce(n: int, m: int, connected_only: bool = True) -> GraphClassCatalog:
    """Canonicalise every m-edge subset of K_n; slow reference path for n <= 6."""
    _check_bounds(n, m)
    if n > 6:
        raise CapacityError("the brute-force catalogue is limited to n <= 6")
    pairs = list(combinations(range(n), 2))
    codes = set()
    for chosen in combinations(pairs, m):
        g = Graph(n, chosen)
        if connected_only and not is_connected(g):
            continue
        codes.add(canonical_code(g, refine=False)[0])
    reps = tuple(graph_from_code(n, c) for c in sorted(codes))
    return GraphClassCatalog(n, m, connected_only, reps)


def permutation_count(g: Graph) -> int:
    """Orderings scanned by ``canonical_code`` for this graph."""
    colors = _refine(g)
    out = 1
    for c in set(colors):
        out *= factorial(colors.count(c))
    return out
