"""Simple undirected graphs on vertices 0..n-1 and the basic invariants used
throughout the package (components, spanning trees, bridges, spectra).

Edges carry a stable index 0..m-1 (their position in ``Graph.edges``) so
that percolation masks and subset enumeration can be bit-positional.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, NumericalError, PreconditionError

VERTEX_CAP = 2**24
ZERO_TOL = 1e-9


class Graph:
    """Immutable simple graph.

    ``edges`` may be any iterable of vertex pairs or an integer array of
    shape (m, 2). Each pair is stored as ``(min, max)`` in the given order;
    that order defines the edge index.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        n = int(n)
        if n < 0:
            raise PreconditionError(f"vertex count must be >= 0, got {n}")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise PreconditionError("edges must be a sequence of vertex pairs")
        u = np.minimum(arr[:, 0], arr[:, 1])
        v = np.maximum(arr[:, 0], arr[:, 1])
        if len(u) and (u.min() < 0 or v.max() >= n):
            raise PreconditionError(f"edge endpoint outside 0..{n - 1}")
        if np.any(u == v):
            raise PreconditionError("self-loops are not allowed")
        keys = u * n + v
        if len(np.unique(keys)) != len(keys):
            raise PreconditionError("duplicate edges are not allowed")
        u.setflags(write=False)
        v.setflags(write=False)
        self._n = n
        self._u = u
        self._v = v

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._u)

    @property
    def u(self) -> np.ndarray:
        """Smaller endpoint of each edge, by edge index."""
        return self._u

    @property
    def v(self) -> np.ndarray:
        """Larger endpoint of each edge, by edge index."""
        return self._v

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self._u.tolist(), self._v.tolist()))

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self._u, minlength=self._n) + np.bincount(self._v, minlength=self._n)
        deg.setflags(write=False)
        return deg

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self._n)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        bits = [0] * self._n
        for a, b in self.edges:
            bits[a] |= 1 << b
            bits[b] |= 1 << a
        return tuple(bits)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edge_index

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``x`` renamed to ``perm[x]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self._n)):
            raise PreconditionError("relabelling must be a permutation of the vertices")
        return Graph(self._n, np.stack([p[self._u], p[self._v]], axis=1))

    def subgraph_with_edges(self, keep: np.ndarray) -> "Graph":
        """Spanning subgraph keeping the edges where the boolean mask is set."""
        keep = np.asarray(keep, dtype=bool)
        return Graph(self._n, np.stack([self._u[keep], self._v[keep]], axis=1))

    def to_text(self) -> str:
        """Serialise as ``n m`` followed by one ``u v`` line per edge, sorted."""
        lines = [f"{self._n} {self.m}"]
        lines.extend(f"{a} {b}" for a, b in self.sorted_edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise PreconditionError("graph text must start with a line 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(r[0]), int(r[1])) for r in rows[1:]]
        if len(pairs) != m:
            raise PreconditionError(f"header announces {m} edges but {len(pairs)} were given")
        return cls(n, pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((self._n, self.edge_set()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    kind: str


# -- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a simple cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at vertex 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# -- degree sequences ---------------------------------------------------------

def is_graphic(seq: Sequence[int]) -> bool:
    """Erdős-Gallai test for a nonincreasing sequence of nonnegative integers."""
    d = list(seq)
    if any(x < 0 for x in d):
        return False
    if any(d[i] < d[i + 1] for i in range(len(d) - 1)):
        raise PreconditionError("degree sequence must be sorted nonincreasing")
    if sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if prefix > rhs:
            return False
    return True


# -- connectivity ---------------------------------------------------------------

def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    parts = []
    adj = g.adjacency
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        part = []
        while stack:
            x = stack.pop()
            part.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        parts.append(sorted(part))
    return parts


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def count_bridges(g: Graph) -> int:
    """Number of cut edges, via iterative low-link DFS."""
    n = g.n
    adj = [[] for _ in range(n)]
    for idx, (a, b) in enumerate(g.edges):
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    disc = [-1] * n
    low = [0] * n
    timer = 0
    bridges = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, edge index used to enter it, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            x, via, pos = stack[-1]
            if pos < len(adj[x]):
                stack[-1] = (x, via, pos + 1)
                y, eid = adj[x][pos]
                if eid == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, eid, 0))
                else:
                    low[x] = min(low[x], disc[y])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        bridges += 1
    return bridges


# -- matrices -------------------------------------------------------------------

def laplacian_matrix(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian D - A as an integer array."""
    L = np.zeros((g.n, g.n), dtype=np.int64)
    np.add.at(L, (g.u, g.v), -1)
    np.add.at(L, (g.v, g.u), -1)
    L[np.diag_indices(g.n)] = g.degrees
    return L


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [r[:] for r in rows]
    k = len(a)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if a[r][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        piv = a[i][i]
        for r in range(i + 1, k):
            ar = a[r]
            fac = ar[i]
            ai = a[i]
            for c in range(i + 1, k):
                ar[c] = (ar[c] * piv - fac * ai[c]) // prev
            ar[i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def count_spanning_trees(g: Graph) -> int:
    """Matrix-tree count: determinant of the Laplacian with row/column 0 removed."""
    if g.n < 1:
        raise PreconditionError("spanning trees need at least one vertex")
    L = laplacian_matrix(g)[1:, 1:]
    return _bareiss_det([[int(x) for x in row] for row in L])


def normalized_laplacian(g: Graph) -> np.ndarray:
    """I - D^{-1/2} A D^{-1/2}, with zero rows for isolated vertices."""
    deg = g.degrees.astype(float)
    A = np.zeros((g.n, g.n))
    A[g.u, g.v] = 1.0
    A[g.v, g.u] = 1.0
    inv_sqrt = np.zeros(g.n)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    L = -(inv_sqrt[:, None] * A * inv_sqrt[None, :])
    L[np.diag_indices(g.n)] = nz.astype(float)
    return L


def laplacian_spectrum(g: Graph, kind: str = "combinatorial") -> Spectrum:
    if g.n < 2:
        raise PreconditionError("spectrum needs at least 2 vertices")
    if kind == "combinatorial":
        M = laplacian_matrix(g).astype(float)
    elif kind == "normalized":
        M = normalized_laplacian(g)
    else:
        raise PreconditionError(f"unknown Laplacian kind {kind!r}")
    ev = np.linalg.eigvalsh(M)
    if not np.all(np.isfinite(ev)):
        raise NumericalError("non-finite Laplacian eigenvalue")
    return Spectrum(tuple(float(x) for x in np.sort(ev)), kind)


def algebraic_connectivity(g: Graph) -> float:
    return laplacian_spectrum(g, "combinatorial").eigenvalues[1]


# -- products -------------------------------------------------------------------

def cartesian_product(g: Graph, h: Graph, cap: int = VERTEX_CAP) -> Graph:
    """G x H with vertex (a, b) encoded as a*|V(H)| + b."""
    if g.n == 0 or h.n == 0:
        raise PreconditionError("both factors must be nonempty")
    if g.n * h.n > cap:
        raise CapacityError(f"product has {g.n * h.n} vertices, cap is {cap}")
    nh = h.n
    a = np.arange(g.n, dtype=np.int64)
    b = np.arange(nh, dtype=np.int64)
    # copies of H inside each G-vertex, then copies of G across each H-vertex
    hu = (a[:, None] * nh + h.u[None, :]).ravel()
    hv = (a[:, None] * nh + h.v[None, :]).ravel()
    gu = (g.u[:, None] * nh + b[None, :]).ravel()
    gv = (g.v[:, None] * nh + b[None, :]).ravel()
    edges = np.stack([np.concatenate([hu, gu]), np.concatenate([hv, gv])], axis=1)
    return Graph(g.n * nh, edges)
