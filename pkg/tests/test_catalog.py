import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuberel.catalog import (
    all_classes,
    canonical_code,
    canonical_form,
    complement,
    enumerate_classes,
    enumerate_classes_bruteforce,
    graph_from_code,
    permutation_count,
)
from cuberel.errors import CapacityError, PreconditionError
from cuberel.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph


@st.composite
def labelled(draw):
    n = draw(st.integers(1, 7))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    return Graph(n, chosen), list(perm)


@settings(max_examples=120, deadline=None)
@given(labelled())
def test_canonical_code_is_invariant(pair):
    g, perm = pair
    assert canonical_code(g)[0] == canonical_code(g.relabel(perm))[0]
    h = canonical_form(g)
    assert canonical_code(h)[0] == canonical_code(g)[0]
    assert graph_from_code(g.n, canonical_code(g)[0]) == h


@settings(max_examples=60, deadline=None)
@given(labelled())
def test_refined_agrees_with_full_scan_on_isomorphism(pair):
    g, perm = pair
    if g.n > 6:
        return
    h = g.relabel(perm)
    assert canonical_code(g, refine=False)[0] == canonical_code(h, refine=False)[0]


def test_distinguishes_non_isomorphic():
    assert canonical_code(path_graph(4))[0] != canonical_code(star_graph(3))[0]
    # two 2-regular graphs on 6 vertices with the same refinement colours
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert canonical_code(two_triangles)[0] != canonical_code(cycle_graph(6))[0]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_connected_class_counts(n, expected):
    total = sum(len(enumerate_classes(n, m)) for m in range(0, n * (n - 1) // 2 + 1))
    assert total == expected


def test_all_class_counts_n7():
    assert sum(len(all_classes(7, m)) for m in range(22)) == 1044


@pytest.mark.parametrize("n", [4, 5])
def test_bruteforce_agrees(n):
    for m in range(0, n * (n - 1) // 2 + 1):
        fast = {canonical_code(g)[0] for g in enumerate_classes(n, m).representatives}
        slow = {canonical_code(g)[0] for g in enumerate_classes_bruteforce(n, m).representatives}
        assert fast == slow


@pytest.mark.slow
def test_bruteforce_agrees_n6():
    for m in (5, 7, 9):
        fast = {canonical_code(g)[0] for g in enumerate_classes(6, m).representatives}
        slow = {canonical_code(g)[0] for g in enumerate_classes_bruteforce(6, m).representatives}
        assert fast == slow


def test_complement_and_counts():
    assert complement(complete_graph(5)).m == 0
    assert permutation_count(complete_graph(5)) == 120
    assert permutation_count(path_graph(4)) == 4
    rng = random.Random(5)
    g = Graph(6, rng.sample(list(itertools.combinations(range(6), 2)), 8))
    assert complement(complement(g)).edge_set() == g.edge_set()


def test_errors():
    with pytest.raises(CapacityError):
        enumerate_classes(9, 3)
    with pytest.raises(PreconditionError):
        enumerate_classes(4, 7)
    with pytest.raises(CapacityError):
        enumerate_classes_bruteforce(7, 6)
