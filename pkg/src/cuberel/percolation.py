"""Monte Carlo edge percolation on product graphs and random graphs.

Trial ``t`` of a run with seed ``s`` draws from its own Philox stream with
key ``s`` and counter block ``t``, so a run gives identical results for
any chunking or worker count. Each trial keeps edge ``e`` when its uniform
draw ``u_e < p``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import PreconditionError
from .graph import Graph

_MASK64 = (1 << 64) - 1
_CHUNK = 256

CRITICAL_VALUES = {
    "q": 0.5,
    "q3": (math.sqrt(3) - 1) / math.sqrt(3),
    "p3": 2 - math.sqrt(2),
}


def critical_value(family: str) -> float:
    try:
        return CRITICAL_VALUES[family]
    except KeyError:
        raise PreconditionError(f"no critical value for family {family!r}") from None


def trial_generator(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one trial of one run."""
    bitgen = np.random.Philox(key=seed & _MASK64, counter=[0, 0, stream, trial])
    return np.random.Generator(bitgen)


@dataclass(frozen=True)
class PercolationEstimate:
    statistic: str
    estimate: float
    stderr: float
    trials: int
    seed: int
    family: str = "custom"
    n: int | None = None
    p: float | None = None

    def within(self, target: float, sigmas: float = 4.0) -> bool:
        return abs(self.estimate - target) <= sigmas * self.stderr


@dataclass(frozen=True)
class IsolatedMoments:
    family: str
    n: int
    p: float
    mean: float
    variance: float
    lam: float


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"p={p} outside [0, 1]")


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise PreconditionError("trials must be >= 1")


def bernoulli_estimate(name, hits, trials, seed, family, n, p) -> PercolationEstimate:
    phat = hits / trials
    se = math.sqrt(phat * (1 - phat) / trials)
    return PercolationEstimate(name, phat, se, trials, seed, family, n, p)


def _run_chunks(fn, trials: int, workers: int):
    spans = [(lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, spans))
    return [fn(s) for s in spans]


def percolation_samples(g: Graph, p: float, trials: int, seed: int, workers: int = 1) -> dict[str, np.ndarray]:
    """Per-trial outcomes: connected, isolated count, middle component, kept edges.

    A middle component has between 2 and |V|/2 vertices.
    """
    _check_p(p)
    _check_trials(trials)
    eu = np.ascontiguousarray(g.u)
    ev = np.ascontiguousarray(g.v)
    half = g.n // 2

    def run(span):
        lo, hi = span
        out = np.zeros((hi - lo, 4), dtype=np.int64)
        for t in range(lo, hi):
            keep = trial_generator(seed, t).random(g.m) < p
            out[t - lo] = _kernels.percolation_trial(g.n, eu, ev, keep, half)
        return out

    res = np.concatenate(_run_chunks(run, trials, workers))
    return {
        "connected": res[:, 0].astype(bool),
        "isolated": res[:, 1],
        "middle": res[:, 2].astype(bool),
        "kept": res[:, 3],
    }


def sample_subgraph(g: Graph, p: float, seed: int) -> Graph:
    """One percolated copy of ``g`` (the first trial of run ``seed``)."""
    _check_p(p)
    keep = trial_generator(seed, 0).random(g.m) < p
    return g.subgraph_with_edges(keep)


def estimate_connectivity(g, p, trials, seed, workers=1, family="custom", n=None) -> PercolationEstimate:
    s = percolation_samples(g, p, trials, seed, workers)
    return bernoulli_estimate("conn", int(s["connected"].sum()), trials, seed, family, n, p)


def estimate_no_isolated(g, p, trials, seed, workers=1, family="custom", n=None) -> PercolationEstimate:
    s = percolation_samples(g, p, trials, seed, workers)
    return bernoulli_estimate("noiso", int((s["isolated"] == 0).sum()), trials, seed, family, n, p)


def middle_component_probability(g, p, trials, seed, workers=1, family="custom", n=None) -> PercolationEstimate:
    s = percolation_samples(g, p, trials, seed, workers)
    return bernoulli_estimate("middle", int(s["middle"].sum()), trials, seed, family, n, p)


def falling_factorial(x: np.ndarray, r: int) -> np.ndarray:
    out = np.ones_like(x, dtype=np.float64)
    for i in range(r):
        out *= x - i
    return out


def moment_estimates(isolated: np.ndarray, r_max: int, seed: int, family="custom", n=None, p=None):
    """E_r[X] = E[X(X-1)...(X-r+1)] for r = 0..r_max from isolated counts."""
    trials = len(isolated)
    x = isolated.astype(np.float64)
    out = []
    for r in range(r_max + 1):
        vals = falling_factorial(x, r)
        mean = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
        out.append(PercolationEstimate(f"E{r}", mean, se, trials, seed, family, n, p))
    return out


def empirical_factorial_moments(g, p, trials, r_max, seed, workers=1, family="custom", n=None):
    if not 0 <= r_max <= 4:
        raise PreconditionError("r_max must be between 0 and 4")
    s = percolation_samples(g, p, trials, seed, workers)
    return moment_estimates(s["isolated"], r_max, seed, family, n, p)


def isolated_moments_theoretical(family: str, n: int, p: float) -> IsolatedMoments:
    """Mean and variance of the isolated-vertex count of Q^n, 3Q^n or P3^n
    percolated at p.

    Var = sum_x P(x isolated)(1 - P(x isolated)) + sum over ordered adjacent
    pairs x~y of p (1-p)^(d_x + d_y - 1).
    """
    _check_p(p)
    if n < 1:
        raise PreconditionError("n must be >= 1")
    q = 1.0 - p
    if family == "q":
        mu = (2 * q) ** n
        var = mu - mu * q**n + mu * n * p * q ** (n - 1)
    elif family == "q3":
        mu = 3**n * q ** (2 * n)
        var = mu - mu * q ** (2 * n) + mu * 2 * n * p * q ** (2 * n - 1)
    elif family == "p3":
        mu = q**n * (3 - p) ** n
        w = 2 + q * q
        var = mu - q ** (2 * n) * w**n + 4 * n * p * q ** (2 * n) * w ** (n - 1)
    else:
        raise PreconditionError(f"unknown family {family!r}")
    return IsolatedMoments(family, n, p, mu, max(var, 0.0), mu)


# -- random graphs -------------------------------------------------------------

def _pairs_from_index(N: int, idx: np.ndarray) -> np.ndarray:
    a_all = np.arange(N - 1, dtype=np.int64)
    starts = a_all * N - a_all * (a_all + 1) // 2
    a = np.searchsorted(starts, idx, side="right") - 1
    b = idx - starts[a] + a + 1
    return np.stack([a, b], axis=1)


def _gnm_edges(N: int, M: int, rng: np.random.Generator) -> np.ndarray:
    total = N * (N - 1) // 2
    if not 0 <= M <= total:
        raise PreconditionError(f"M={M} outside 0..{total}")
    idx = np.sort(rng.choice(total, size=M, replace=False))
    return _pairs_from_index(N, idx)


def sample_gnm(N: int, M: int, seed: int) -> Graph:
    """Uniform simple graph with N vertices and M edges."""
    return Graph(N, _gnm_edges(N, M, trial_generator(seed, 0)))


def sample_gnp(N: int, p: float, seed: int) -> Graph:
    _check_p(p)
    rng = trial_generator(seed, 0)
    M = int(rng.binomial(N * (N - 1) // 2, p))
    return Graph(N, _gnm_edges(N, M, rng))


def estimate_gnp_connectivity(N: int, p: float, trials: int, seed: int, workers: int = 1) -> PercolationEstimate:
    """P(G(N, p) connected), sampling the edge count first."""
    _check_p(p)
    _check_trials(trials)
    total = N * (N - 1) // 2

    def run(span):
        hits = 0
        for t in range(*span):
            rng = trial_generator(seed, t)
            M = int(rng.binomial(total, p))
            e = _gnm_edges(N, M, rng)
            keep = np.ones(M, dtype=np.bool_)
            hits += bool(_kernels.percolation_trial(N, e[:, 0].copy(), e[:, 1].copy(), keep, N // 2)[0])
        return hits

    hits = sum(_run_chunks(run, trials, workers))
    return bernoulli_estimate("conn", hits, trials, seed, "gnp", N, p)


@dataclass(frozen=True)
class PairedComparison:
    cube: PercolationEstimate
    random_graph: PercolationEstimate
    difference: float
    pooled_stderr: float

    @property
    def z(self) -> float:
        return self.difference / self.pooled_stderr if self.pooled_stderr > 0 else math.inf


def gnm_percolation_samples(N: int, M: int, p: float, trials: int, seed: int, workers: int = 1,
                            shared_uniforms: bool = False) -> dict[str, np.ndarray]:
    """Like ``percolation_samples`` but each trial percolates a fresh G(N, M).

    The graph and its edge draws come from stream 1 of the trial; with
    ``shared_uniforms`` the edge draws are taken from stream 0 instead, which
    is the stream ``percolation_samples`` uses for a graph with M edges.
    """
    _check_p(p)
    _check_trials(trials)

    def run(span):
        lo, hi = span
        out = np.zeros((hi - lo, 4), dtype=np.int64)
        for t in range(lo, hi):
            rng = trial_generator(seed, t, stream=1)
            e = _gnm_edges(N, M, rng)
            u = trial_generator(seed, t).random(M) if shared_uniforms else rng.random(M)
            out[t - lo] = _kernels.percolation_trial(N, e[:, 0].copy(), e[:, 1].copy(), u < p, N // 2)
        return out

    res = np.concatenate(_run_chunks(run, trials, workers))
    return {
        "connected": res[:, 0].astype(bool),
        "isolated": res[:, 1],
        "middle": res[:, 2].astype(bool),
        "kept": res[:, 3],
    }


def compare_qn_vs_gnm(n: int, p: float, trials: int, seed: int, common_random_numbers: bool = False,
                      workers: int = 1) -> PairedComparison:
    """Connectivity of percolated Q^n against percolated G(2^n, n 2^(n-1)).

    Each trial draws a fresh G(N, M). With common random numbers the two
    graphs share the uniform draw of each edge slot.
    """
    from .products import ProductSpec, build

    cube = build(ProductSpec("K2", n))
    sq = percolation_samples(cube, p, trials, seed, workers)
    sg = gnm_percolation_samples(cube.n, cube.m, p, trials, seed, workers, common_random_numbers)
    est_q = bernoulli_estimate("conn", int(sq["connected"].sum()), trials, seed, "q", n, p)
    est_g = bernoulli_estimate("conn", int(sg["connected"].sum()), trials, seed, "gnm", n, p)
    pooled = math.sqrt(est_q.stderr**2 + est_g.stderr**2)
    return PairedComparison(est_q, est_g, est_g.estimate - est_q.estimate, pooled)
