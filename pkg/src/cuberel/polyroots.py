"""Exact real-root isolation on (0, 1) for integer polynomials.

Polynomials are lists of coefficients, lowest degree first. Isolation uses
the sign variations of Bernstein coefficients (a Descartes bound on the
open unit interval) with exact de Casteljau subdivision, after removing
repeated factors; isolated roots are then bisected to a requested width.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Sequence


def trim(c: Sequence) -> list:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def horner(c: Sequence, x):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def derivative(c: Sequence) -> list:
    return [i * c[i] for i in range(1, len(c))]


def _divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(trim(a)) >= len(b):
        a = trim(a)
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a = trim(a)
        if not a:
            break
    return q, trim(a)


def _primitive(c: Sequence) -> list[int]:
    """Scale rational coefficients to coprime integers with positive leading term."""
    c = [Fraction(x) for x in trim(c)]
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints and ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def poly_gcd(a: Sequence, b: Sequence) -> list[int]:
    a, b = trim(a), trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _primitive(a)


def squarefree(c: Sequence[int]) -> list[int]:
    c = trim(c)
    if len(c) <= 2:
        return _primitive(c)
    g = poly_gcd(c, derivative(c))
    if len(g) <= 1:
        return _primitive(c)
    q, r = _divmod(c, g)
    assert not r
    return _primitive(q)


def to_bernstein(c: Sequence) -> list[Fraction]:
    """Bernstein coefficients on [0, 1] of a power-basis polynomial."""
    d = len(c) - 1
    return [
        sum(Fraction(comb(k, i), comb(d, i)) * c[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def _variations(b: Sequence) -> int:
    signs = [x > 0 for x in b if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _split(b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # de Casteljau at the midpoint
    left, right = [b[0]], [b[-1]]
    row = list(b)
    while len(row) > 1:
        row = [(x + y) / 2 for x, y in zip(row, row[1:])]
        left.append(row[0])
        right.append(row[-1])
    return left, right[::-1]


def _unit_core(c: Sequence[int]) -> list[int]:
    """Square-free part of ``c`` with the factors x and (1 - x) removed."""
    sf = squarefree(c)
    while len(sf) > 1 and sf[0] == 0:
        sf = sf[1:]
    while len(sf) > 1 and sum(sf) == 0:
        q, _ = _divmod(sf, [-1, 1])
        sf = _primitive(q)
    return sf


def isolate_unit_roots(c: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi), each holding exactly one distinct root of
    ``c`` in the open interval (0, 1). Degenerate intervals lo == hi mark
    roots hit exactly by a subdivision point."""
    sf = _unit_core(c)
    if len(sf) <= 1:
        return []
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), Fraction(1), to_bernstein(sf))]
    while stack:
        lo, hi, b = stack.pop()
        v = _variations(b)
        if v == 0:
            continue
        if v == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left, right = _split(b)
        if left[-1] == 0:
            out.append((mid, mid))
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    out.sort()
    return out


def refine(c: Sequence[int], lo: Fraction, hi: Fraction, tol: float = 1e-9) -> tuple[Fraction, Fraction]:
    """Bisect an interval holding one simple root of ``c`` to width <= tol.

    ``lo`` may itself be a different root of ``c``; the sign just right of
    it is then read off the derivative.
    """
    if lo == hi:
        return lo, hi
    flo = horner(c, lo)
    sign_lo = (flo > 0) - (flo < 0)
    if sign_lo == 0:
        d = horner(derivative(c), lo)
        sign_lo = (d > 0) - (d < 0)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = horner(c, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


def unit_roots(c: Sequence[int], tol: float = 1e-9) -> list[tuple[Fraction, Fraction]]:
    """All distinct roots of ``c`` in (0, 1) as brackets of width <= tol."""
    core = _unit_core(c)
    return [refine(core, lo, hi, tol) for lo, hi in isolate_unit_roots(c)]
