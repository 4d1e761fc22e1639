import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuberel.errors import CapacityError, IntegrityError, PreconditionError
from cuberel.graph import Graph, complete_graph, cycle_graph, is_connected, path_graph
from cuberel.reliability import (
    ReliabilityCoefficients,
    compare,
    cross_check,
    difference_power_basis,
    evaluate,
    reliability_coefficients,
)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 6))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    return Graph(n, chosen)


def brute_coefficients(g):
    out = [0] * (g.m + 1)
    for mask in range(1 << g.m):
        kept = [e for i, e in enumerate(g.edges) if mask >> i & 1]
        if is_connected(Graph(g.n, kept)):
            out[len(kept)] += 1
    return out


def test_c4():
    c = reliability_coefficients(cycle_graph(4))
    assert c.s == (0, 0, 0, 4, 1)
    assert evaluate(c, Fraction(1, 2)) == Fraction(5, 16)
    assert c.descending() == [4]


def test_trees_and_triangle():
    assert reliability_coefficients(path_graph(5)).s == (0, 0, 0, 0, 1)
    assert reliability_coefficients(complete_graph(3)).s == (0, 0, 3, 1)
    assert reliability_coefficients(Graph(1)).s == (1,)


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_methods_agree_with_brute_force(g):
    c = reliability_coefficients(g)
    assert list(c.s) == brute_coefficients(g)
    assert reliability_coefficients(g, method="subsets").s == c.s
    assert all(cross_check(g, c).values())


@settings(max_examples=40, deadline=None)
@given(small_graphs(), st.fractions(0, 1))
def test_evaluation(g, p):
    c = reliability_coefficients(g)
    exact = evaluate(c, p)
    assert 0 <= exact <= 1
    assert math.isclose(evaluate(c, float(p)), float(exact), abs_tol=1e-12)
    assert evaluate(c, Fraction(1)) == (1 if is_connected(g) else 0)


def test_workers_do_not_change_counts():
    g = complete_graph(7)
    assert reliability_coefficients(g, workers=1).s == reliability_coefficients(g, workers=2).s


def test_cross_check_detects_corruption():
    g = complete_graph(4)
    c = reliability_coefficients(g)
    bad = ReliabilityCoefficients(4, 6, (0, 0, 0, 15, 15, 6, 1))
    assert bad.s != c.s
    with pytest.raises(IntegrityError):
        cross_check(g, bad)
    assert cross_check(g, bad, strict=False)["spanning_trees"] is False


def test_errors():
    with pytest.raises(CapacityError):
        reliability_coefficients(complete_graph(8))
    with pytest.raises(PreconditionError):
        reliability_coefficients(cycle_graph(4), method="magic")
    with pytest.raises(PreconditionError):
        evaluate(reliability_coefficients(cycle_graph(4)), 1.5)


def test_difference_basis():
    a = reliability_coefficients(cycle_graph(4))
    b = ReliabilityCoefficients(4, 4, (0, 0, 0, 0, 1))
    d = difference_power_basis(a, b)
    for p in (Fraction(1, 3), Fraction(3, 4)):
        assert sum(x * p**i for i, x in enumerate(d)) == evaluate(a, p) - evaluate(b, p)


def test_compare_dominance_and_crossover():
    a = reliability_coefficients(cycle_graph(4))
    b = ReliabilityCoefficients(4, 4, (0, 0, 0, 0, 1))
    assert compare(a, b).verdict == "a_dominates"
    assert compare(b, a).verdict == "b_dominates"
    assert compare(a, a).verdict == "identical"
    x = ReliabilityCoefficients(6, 11, (0, 0, 0, 0, 0, 225, 368, 309, 163, 55, 11, 1))
    y = ReliabilityCoefficients(6, 11, (0, 0, 0, 0, 0, 224, 370, 310, 163, 55, 11, 1))
    cmp = compare(x, y)
    assert cmp.verdict == "crossover" and cmp.leaders == ("a", "b")
    assert abs(cmp.crossovers[0] - (1 - math.sqrt(2) / 2)) < 1e-9
