"""Random accessibility: how many walk transitions it takes to see j new vertices.

X_j counts the transitions of a simple random walk until j distinct vertices
other than the start have been visited. One walk yields X_1 < X_2 < ...,
so a whole profile costs no more than its last entry.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import PreconditionError
from .graph import Graph, is_connected
from .percolation import trial_generator

_CHUNK = 256
_WALK_STREAM = 2


@dataclass(frozen=True)
class AccessibilityEstimate:
    graph: str
    j: int
    policy: str
    mean: float
    variance: float
    trials: int
    seed: int

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.trials)


def _policy_name(policy) -> str:
    if policy == "weighted":
        return "weighted"
    return f"fixed({int(policy)})"


def _csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(g.degrees)
    indices = np.concatenate([np.asarray(sorted(a), dtype=np.int64) for a in g.adjacency]) if g.m else \
        np.zeros(0, dtype=np.int64)
    return indptr, indices


def _check(g: Graph, policy, jmax: int) -> None:
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("random accessibility needs a connected graph with at least 2 vertices")
    if not 1 <= jmax <= g.n - 1:
        raise PreconditionError(f"j must lie in 1..{g.n - 1}, got {jmax}")
    if policy != "weighted":
        v = int(policy)
        if not 0 <= v < g.n:
            raise PreconditionError(f"start vertex {v} not in graph")


def milestone_samples(g: Graph, jmax: int, policy=0, trials: int = 1000, seed: int = 0,
                      workers: int = 1) -> np.ndarray:
    """(trials, jmax) array; row t holds X_1..X_jmax of walk t."""
    _check(g, policy, jmax)
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    indptr, indices = _csr(g)
    cumdeg = np.cumsum(g.degrees) / (2 * g.m)
    block = int(8 * g.n * math.log(g.n + 1)) + 64

    def run(span):
        lo, hi = span
        out = np.zeros((hi - lo, jmax), dtype=np.int64)
        for t in range(lo, hi):
            rng = trial_generator(seed, t, stream=_WALK_STREAM)
            if policy == "weighted":
                start = int(np.searchsorted(cumdeg, rng.random(), side="right"))
                start = min(start, g.n - 1)
            else:
                start = int(policy)
            u = rng.random(block)
            # the walk is a function of the draw prefix, so extending the
            # array and rerunning continues the same walk
            while _kernels.walk_milestones(indptr, indices, start, out[t - lo], u) < 0:
                u = np.concatenate([u, rng.random(len(u))])
        return out

    spans = [(lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, spans))
    else:
        parts = [run(s) for s in spans]
    return np.concatenate(parts)


def _summarise(samples: np.ndarray, g_id: str, policy, seed: int) -> list[AccessibilityEstimate]:
    trials = samples.shape[0]
    means = samples.mean(axis=0)
    variances = samples.var(axis=0, ddof=1) if trials > 1 else np.zeros(samples.shape[1])
    name = _policy_name(policy)
    return [
        AccessibilityEstimate(g_id, j + 1, name, float(means[j]), float(variances[j]), trials, seed)
        for j in range(samples.shape[1])
    ]


def estimate_accessibility(g: Graph, j: int, policy=0, trials: int = 1000, seed: int = 0,
                           workers: int = 1, graph_id: str = "") -> AccessibilityEstimate:
    """Sample mean and variance of X_j. ``policy`` is a start vertex or 'weighted'."""
    samples = milestone_samples(g, j, policy, trials, seed, workers)
    return _summarise(samples, graph_id, policy, seed)[-1]


def accessibility_profile(g: Graph, policy=0, trials: int = 1000, seed: int = 0,
                          workers: int = 1, graph_id: str = "") -> list[AccessibilityEstimate]:
    """Estimates of X_1 .. X_{n-1} from the same walks."""
    samples = milestone_samples(g, g.n - 1, policy, trials, seed, workers)
    return _summarise(samples, graph_id, policy, seed)


# -- exact oracle --------------------------------------------------------------

def exact_accessibility(g: Graph, policy=0) -> list[float]:
    """E[X_j] for j = 1..n-1 by an absorbing-chain computation.

    States are (visited set, vertex just added). Inside a visited set S the
    walk is transient; solving (I - A_S) once per S gives both the expected
    time to leave S and where it lands.
    """
    _check(g, policy, g.n - 1)
    n = g.n
    if n > 12:
        raise PreconditionError("the exact oracle is limited to n <= 12")
    if policy == "weighted":
        w = np.asarray(g.degrees, dtype=float) / (2 * g.m)
        per_start = [np.asarray(exact_accessibility(g, v)) for v in range(n)]
        return [float(x) for x in sum(wv * r for wv, r in zip(w, per_start))]
    start = int(policy)
    deg = np.asarray(g.degrees, dtype=float)
    adj = np.zeros((n, n))
    adj[g.u, g.v] = 1
    adj[g.v, g.u] = 1
    step = adj / deg[:, None]
    dist = {(1 << start, start): 1.0}
    means, acc = [], 0.0
    for _ in range(n - 1):
        nxt: dict[tuple[int, int], float] = {}
        gained = 0.0
        by_set: dict[int, list[tuple[int, float]]] = {}
        for (S, x), pr in dist.items():
            by_set.setdefault(S, []).append((x, pr))
        for S, entries in by_set.items():
            inside = [v for v in range(n) if S >> v & 1]
            outside = [v for v in range(n) if not S >> v & 1]
            A = step[np.ix_(inside, inside)]
            B = step[np.ix_(inside, outside)]
            M = np.eye(len(inside)) - A
            hit = np.linalg.solve(M, np.ones(len(inside)))
            land = np.linalg.solve(M, B)
            pos = {v: i for i, v in enumerate(inside)}
            for x, pr in entries:
                i = pos[x]
                gained += pr * hit[i]
                for k, w in enumerate(outside):
                    if land[i, k] > 0:
                        key = (S | 1 << w, w)
                        nxt[key] = nxt.get(key, 0.0) + pr * land[i, k]
        acc += gained
        means.append(float(acc))
        dist = nxt
    return means
