"""Cartesian powers of small base graphs: Q^n (K2), 3Q^n (K3), P3^n.

Vertex ``x`` of ``B^n`` is the integer whose base-|V(B)| digits are the
coordinates, least significant digit first. Two vertices are adjacent when
they differ in exactly one digit and those digits are adjacent in ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Union

import numpy as np

from .errors import CapacityError, PreconditionError
from .graph import VERTEX_CAP, Graph, complete_graph, path_graph

BASES = {
    "K2": complete_graph(2),
    "K3": complete_graph(3),
    "P3": path_graph(3),
}

FAMILY_BASE = {"q": "K2", "q3": "K3", "p3": "P3"}


@dataclass(frozen=True)
class ProductSpec:
    base: Union[str, Graph]
    exponent: int
    cap: int = VERTEX_CAP

    def __post_init__(self):
        if isinstance(self.base, str) and self.base not in BASES:
            raise PreconditionError(f"unknown base graph {self.base!r}")
        if self.exponent < 1:
            raise PreconditionError("exponent must be >= 1")

    @property
    def base_graph(self) -> Graph:
        return BASES[self.base] if isinstance(self.base, str) else self.base

    @classmethod
    def family(cls, name: str, n: int, cap: int = VERTEX_CAP) -> "ProductSpec":
        """``family('q', 5)`` is Q^5; names are q, q3, p3."""
        try:
            return cls(FAMILY_BASE[name], n, cap)
        except KeyError:
            raise PreconditionError(f"unknown family {name!r}") from None


def vertex_count(spec: ProductSpec) -> int:
    return spec.base_graph.n ** spec.exponent


def edge_count(spec: ProductSpec) -> int:
    b = spec.base_graph
    return spec.exponent * b.n ** (spec.exponent - 1) * b.m


def build(spec: ProductSpec) -> Graph:
    base = spec.base_graph
    k, n = base.n, spec.exponent
    total = vertex_count(spec)
    if total > spec.cap:
        raise CapacityError(f"{total} vertices exceeds cap {spec.cap}")
    x = np.arange(total, dtype=np.int64)
    us, vs = [], []
    weight = 1
    for _ in range(n):
        digit = (x // weight) % k
        for a, c in base.edges:
            src = x[digit == a]
            us.append(src)
            vs.append(src + (c - a) * weight)
        weight *= k
    edges = np.stack([np.concatenate(us), np.concatenate(vs)], axis=1)
    return Graph(total, edges)


def digits(x: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(x % base)
        x //= base
    return out


def degree_of(spec: ProductSpec, vertex: int) -> int:
    """Degree of ``vertex`` in the power graph without building it."""
    base = spec.base_graph
    if not 0 <= vertex < vertex_count(spec):
        raise PreconditionError(f"vertex {vertex} out of range")
    if spec.base == "K2":
        return spec.exponent
    if spec.base == "K3":
        return 2 * spec.exponent
    ds = digits(vertex, base.n, spec.exponent)
    if spec.base == "P3":
        return spec.exponent + sum(1 for d in ds if d == 1)
    deg = base.degrees
    return int(sum(deg[d] for d in ds))


def p3_degree_histogram(n: int) -> dict[int, int]:
    """Number of vertices of each degree n+i in P3^n."""
    return {n + i: comb(n, i) * 2 ** (n - i) for i in range(n + 1)}


def parse_family(text: str, cap: int = VERTEX_CAP) -> ProductSpec:
    """Parse ``q:<n>``, ``q3:<n>`` or ``p3:<n>``."""
    name, _, arg = text.partition(":")
    if not arg:
        raise PreconditionError(f"family spec {text!r} must look like name:n")
    return ProductSpec.family(name, int(arg), cap)
