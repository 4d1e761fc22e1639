"""All-terminal reliability.

R(G, p) = sum_k s_k p^k (1-p)^(m-k), where s_k counts the connected spanning
subgraphs of G with exactly k edges. Coefficients are computed exactly by
visiting every edge subset; an independent vertex-subset recurrence is
available for cross-checking.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .errors import CapacityError, IntegrityError, PreconditionError
from .graph import Graph, count_bridges, count_spanning_trees, is_connected
from .polyroots import horner, unit_roots

EDGE_CAP = 25
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ReliabilityCoefficients:
    n: int
    m: int
    s: tuple[int, ...]

    def __post_init__(self):
        if len(self.s) != self.m + 1:
            raise PreconditionError("coefficient vector must have m + 1 entries")

    def descending(self) -> list[int]:
        """s_{m-1}, s_{m-2}, ..., s_{n-1}: the layout of a published table row."""
        return [self.s[k] for k in range(self.m - 1, self.n - 2, -1)]

    def __call__(self, p):
        return evaluate(self, p)


def _enumerate(g: Graph, workers: int) -> list[int]:
    eu = np.ascontiguousarray(g.u, dtype=np.int64)
    ev = np.ascontiguousarray(g.v, dtype=np.int64)
    total = 1 << g.m
    bounds = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]

    def run(span):
        out = np.zeros(g.m + 1, dtype=np.int64)
        _kernels.tally_connected_subsets(g.n, eu, ev, span[0], span[1], out)
        return out

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    acc = [0] * (g.m + 1)
    for part in parts:
        for k, x in enumerate(part.tolist()):
            acc[k] += x
    return acc


def _subset_recurrence(g: Graph) -> list[int]:
    # C(S) = (1+x)^e(S) - sum over T, v0 in T, T proper subset of S, of C(T) (1+x)^e(S\T);
    # C(T) counts connected spanning subgraphs of G[T] by edge count.
    n, m = g.n, g.m
    full = (1 << n) - 1
    esize = [0] * (1 << n)
    for a, b in g.edges:
        bit = (1 << a) | (1 << b)
        for S in range(1 << n):
            if S & bit == bit:
                esize[S] += 1
    binom = [[comb(e, k) for k in range(e + 1)] for e in range(m + 1)]
    conn: dict[int, list[int]] = {}
    for S in range(1, full + 1, 2):  # subsets containing vertex 0
        poly = list(binom[esize[S]])
        poly += [0] * (m + 1 - len(poly))
        rest = S & ~1
        T_rest = (rest - 1) & rest
        # proper subsets T of S with vertex 0: T = 1 | sub, sub a proper subset of rest
        while True:
            T = 1 | T_rest
            if T != S:
                cT = conn[T]
                row = binom[esize[S & ~T]]
                for i, a in enumerate(cT):
                    if a:
                        for j, b in enumerate(row):
                            poly[i + j] -= a * b
            if T_rest == 0:
                break
            T_rest = (T_rest - 1) & rest
        conn[S] = poly
    return conn[full]


def reliability_coefficients(
    g: Graph, cap: int = EDGE_CAP, method: str = "enumerate", workers: int = 1
) -> ReliabilityCoefficients:
    """Exact s vector of ``g``.

    ``method='enumerate'`` visits all 2^m edge subsets (union-find per subset);
    ``method='subsets'`` runs the vertex-subset recurrence in O(3^n m^2).
    """
    if g.n < 1:
        raise PreconditionError("graph must have at least one vertex")
    if method == "enumerate":
        if g.m > cap:
            raise CapacityError(f"m={g.m} exceeds the enumeration cap of {cap} edges")
        s = _enumerate(g, workers)
    elif method == "subsets":
        if g.n > 20:
            raise CapacityError(f"n={g.n} too large for the vertex-subset recurrence")
        s = _subset_recurrence(g)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return ReliabilityCoefficients(g.n, g.m, tuple(int(x) for x in s))


def evaluate(coeffs: ReliabilityCoefficients, p):
    """R(p). Exact for ``Fraction`` input, otherwise a float."""
    m = coeffs.m
    if isinstance(p, Fraction):
        q = 1 - p
        return sum(s * p**k * q ** (m - k) for k, s in enumerate(coeffs.s) if s)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"p={p} outside [0, 1]")
    q = 1.0 - p
    return math.fsum(s * p**k * q ** (m - k) for k, s in enumerate(coeffs.s) if s)


def cross_check(g: Graph, coeffs: ReliabilityCoefficients, strict: bool = True) -> dict[str, bool]:
    """Compare the end coefficients with independently computed invariants."""
    if (coeffs.n, coeffs.m) != (g.n, g.m):
        raise PreconditionError("coefficients do not belong to this graph")
    connected = is_connected(g)
    checks = {}
    if g.n - 1 <= g.m:
        checks["spanning_trees"] = coeffs.s[g.n - 1] == count_spanning_trees(g)
    checks["top"] = coeffs.s[g.m] == (1 if connected else 0)
    if connected and g.m >= 1:
        checks["bridges"] = coeffs.s[g.m - 1] == g.m - count_bridges(g)
    if strict:
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            raise IntegrityError(f"coefficient checks failed for {g!r}: {', '.join(failed)}")
    return checks


# -- comparison --------------------------------------------------------------

def difference_power_basis(a: ReliabilityCoefficients, b: ReliabilityCoefficients) -> list[int]:
    """Power-basis integer coefficients of R_a(p) - R_b(p)."""
    m = a.m
    out = [0] * (m + 1)
    for i in range(m + 1):
        d = a.s[i] - b.s[i]
        if not d:
            continue
        # p^i (1-p)^(m-i) = sum_j C(m-i, j) (-1)^j p^(i+j)
        for j in range(m - i + 1):
            out[i + j] += d * comb(m - i, j) * (-1) ** j
    return out


@dataclass(frozen=True)
class Comparison:
    verdict: str  # identical | a_dominates | b_dominates | crossover
    crossovers: tuple[float, ...]
    brackets: tuple[tuple[Fraction, Fraction], ...]
    leaders: tuple[str, ...]  # 'a' or 'b' on each interval between crossovers
    touch_points: tuple[float, ...] = ()

    @property
    def better_near_zero(self) -> str | None:
        return self.leaders[0] if self.leaders else None


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def compare(a: ReliabilityCoefficients, b: ReliabilityCoefficients, tol: float = 1e-9) -> Comparison:
    """Locate every p in (0, 1) where R_a - R_b changes sign."""
    if (a.n, a.m) != (b.n, b.m):
        raise PreconditionError("graphs must share n and m")
    if a.s == b.s:
        return Comparison("identical", (), (), ())
    diff = difference_power_basis(a, b)
    brackets = unit_roots(diff, tol)
    cuts = [Fraction(0)] + [x for br in brackets for x in br] + [Fraction(1)]
    # sign of the difference strictly inside each gap between brackets
    gap_signs = []
    for lo, hi in zip(cuts[0::2], cuts[1::2]):
        gap_signs.append(_sign(horner(diff, (lo + hi) / 2)))
    crossings, touches, kept = [], [], []
    leaders = [gap_signs[0]]
    for k, br in enumerate(brackets):
        root = float((br[0] + br[1]) / 2)
        if gap_signs[k + 1] != gap_signs[k]:
            crossings.append(root)
            kept.append(br)
            leaders.append(gap_signs[k + 1])
        else:
            touches.append(root)
    names = tuple("a" if s > 0 else "b" for s in leaders)
    if not crossings:
        verdict = "a_dominates" if leaders[0] > 0 else "b_dominates"
    else:
        verdict = "crossover"
    return Comparison(verdict, tuple(crossings), tuple(kept), names, tuple(touches))
