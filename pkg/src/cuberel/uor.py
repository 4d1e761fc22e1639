"""Uniformly optimally reliable (UOR) graphs.

``find_uor`` computes the reliability polynomial of every connected class in
G(n, m) and sweeps p from 0 to 1 tracking which class is on top. One class
on top throughout is a UOR graph; otherwise the sweep yields the classes
that are optimal somewhere and the crossover points between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .catalog import enumerate_classes
from .errors import PreconditionError
from .graph import Graph, is_connected
from .reliability import (
    Comparison,
    ReliabilityCoefficients,
    compare,
    cross_check,
    reliability_coefficients,
)


@dataclass(frozen=True)
class CrossoverReport:
    n: int
    m: int
    # envelope in order of increasing p; one entry means a UOR graph exists
    maximal: tuple[ReliabilityCoefficients, ...]
    maximal_graphs: tuple[tuple[Graph, ...], ...]
    crossovers: tuple[float, ...]
    brackets: tuple[tuple[Fraction, Fraction], ...]
    classes: tuple[Graph, ...] = field(repr=False)
    coefficients: tuple[ReliabilityCoefficients, ...] = field(repr=False)

    @property
    def uor_exists(self) -> bool:
        return len(self.maximal) == 1

    @property
    def representative(self) -> Graph | None:
        return self.maximal_graphs[0][0] if self.uor_exists else None

    @property
    def witness(self) -> tuple[Graph, Graph] | None:
        if self.uor_exists:
            return None
        return self.maximal_graphs[0][0], self.maximal_graphs[1][0]


def _after(cmp: Comparison, point: Fraction) -> str:
    """Which side of a comparison leads just to the right of ``point``."""
    passed = sum(1 for lo, _ in cmp.brackets if lo <= point)
    return cmp.leaders[passed]


def upper_envelope(vectors: list[ReliabilityCoefficients]):
    """Sweep p over (0, 1); return (leader indices, crossover brackets)."""
    if not vectors:
        raise PreconditionError("no candidate graphs")
    cache: dict[tuple[int, int], Comparison] = {}

    def cmp(i: int, j: int) -> Comparison:
        if (i, j) not in cache:
            cache[(i, j)] = compare(vectors[i], vectors[j])
        return cache[(i, j)]

    # best as p -> 0+: lexicographic on s_0, s_1, ...
    lead = max(range(len(vectors)), key=lambda i: vectors[i].s)
    leaders = [lead]
    brackets: list[tuple[Fraction, Fraction]] = []
    position = Fraction(0)
    for _ in range(len(vectors) + 1):
        events = []
        for j in range(len(vectors)):
            if j == lead:
                continue
            c = cmp(lead, j)
            for k, br in enumerate(c.brackets):
                if br[0] > position and c.leaders[k + 1] == "b":
                    events.append((br, j))
                    break
        if not events:
            break
        first = min(br for br, _ in events)
        tied = [j for br, j in events if br[0] <= first[1]]
        point = max(br[1] for br, j in events if j in tied)
        best = tied[0]
        for j in tied[1:]:
            if _after(cmp(best, j), point) == "b":
                best = j
        brackets.append(first)
        leaders.append(best)
        lead = best
        position = point
    return leaders, brackets


def find_uor(n: int, m: int, method: str = "enumerate", workers: int = 1, check: bool = True) -> CrossoverReport:
    """Exhaustive search over the connected classes of G(n, m)."""
    if m < n - 1:
        raise PreconditionError(f"G({n},{m}) has no connected graphs")
    classes = list(enumerate_classes(n, m).representatives)
    coeffs = []
    for g in classes:
        c = reliability_coefficients(g, method=method, workers=workers)
        if check:
            cross_check(g, c)
        coeffs.append(c)
    # graphs with equal polynomials are interchangeable
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(coeffs):
        groups.setdefault(c.s, []).append(i)
    keys = list(groups)
    vectors = [coeffs[groups[k][0]] for k in keys]
    leaders, brackets = upper_envelope(vectors)
    maximal = tuple(vectors[i] for i in leaders)
    members = tuple(tuple(classes[j] for j in groups[keys[i]]) for i in leaders)
    crossings = tuple(float((lo + hi) / 2) for lo, hi in brackets)
    return CrossoverReport(n, m, maximal, members, crossings, tuple(brackets), tuple(classes), tuple(coeffs))


# -- necessary conditions ------------------------------------------------------

def edge_connectivity(g: Graph) -> int:
    """Smallest number of edges whose removal disconnects ``g`` (brute force)."""
    if g.n <= 1:
        return 0
    if not is_connected(g):
        return 0
    upper = int(min(g.degrees))
    edges = g.edges
    for size in range(1, upper):
        for cut in combinations(range(g.m), size):
            drop = set(cut)
            if not is_connected(Graph(g.n, [e for i, e in enumerate(edges) if i not in drop])):
                return size
    return upper


def necessary_conditions(report: CrossoverReport) -> dict[str, bool]:
    """For a UOR graph: most spanning trees in its class, and edge
    connectivity floor(2m/n)."""
    if not report.uor_exists:
        return {}
    n, m = report.n, report.m
    best = report.maximal[0]
    trees = max(c.s[n - 1] for c in report.coefficients)
    return {
        "max_spanning_trees": best.s[n - 1] == trees,
        "max_edge_connectivity": edge_connectivity(report.representative) == (2 * m) // n,
    }


# -- constructions -------------------------------------------------------------

def subdivide(seed_n: int, lines: list[tuple[int, int]], extra: int) -> Graph:
    """Insert ``extra`` degree-2 vertices into ``lines`` round-robin, so the
    number added to any two lines differs by at most one."""
    k = len(lines)
    counts = [extra // k + (1 if i < extra % k else 0) for i in range(k)]
    edges = []
    nxt = seed_n
    for (a, b), c in zip(lines, counts):
        chain = [a] + list(range(nxt, nxt + c)) + [b]
        nxt += c
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, edges)


K4_LINES = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
K33_LINES = [(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3), (0, 5), (1, 3), (2, 4)]


def boesch_construction(n: int, m: int) -> Graph:
    """Balanced subdivision of the 3-edge theta multigraph (m = n+1) or of K4 (m = n+2)."""
    if m == n + 1:
        if n < 5:
            raise PreconditionError("the theta construction needs n >= 5")
        return subdivide(2, [(0, 1)] * 3, n - 2)
    if m == n + 2:
        if n < 4:
            raise PreconditionError("the K4 construction needs n >= 4")
        return subdivide(4, K4_LINES, n - 4)
    raise PreconditionError("boesch_construction covers m = n+1 and m = n+2 only")


def wang_construction(n: int, m: int | None = None) -> Graph:
    """Balanced subdivision of K_{3,3} (m = n+3)."""
    if m is not None and m != n + 3:
        raise PreconditionError("wang_construction covers m = n+3 only")
    if n < 6:
        raise PreconditionError("the K_{3,3} construction needs n >= 6")
    return subdivide(6, K33_LINES, n - 6)


def counterexample_parameters(n: int) -> int:
    """Edge count of the known family with no UOR graph on n vertices."""
    if n < 6:
        raise PreconditionError("the counterexample families start at n = 6")
    if n % 2 == 0:
        return n * (n - 1) // 2 - (n + 2) // 2
    return n * (n - 1) // 2 - (n + 5) // 2


# -- tables ------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    n: int
    m: int
    label: str
    coefficients: tuple[int, ...]  # s_{m-1} down to s_{n-1}


def table_rows(report: CrossoverReport) -> list[TableRow]:
    if report.uor_exists:
        return [TableRow(report.n, report.m, "", tuple(report.maximal[0].descending()))]
    labels = "abcdefghijklmnopqrstuvwxyz"
    return [
        TableRow(report.n, report.m, labels[i], tuple(c.descending()))
        for i, c in enumerate(report.maximal)
    ]


def uor_table(n: int, m_values=None, method: str = "enumerate", workers: int = 1):
    """Reports and table rows for every m in ``m_values`` (default n..C(n,2))."""
    if m_values is None:
        m_values = range(n, comb(n, 2) + 1)
    reports = [find_uor(n, m, method=method, workers=workers) for m in m_values]
    rows = [row for r in reports for row in table_rows(r)]
    return reports, rows

