import itertools
import random

import numpy as np
import pytest

from conftest import all_graphs, random_graph
from lmda.fixtures import FIG5_WITNESSES, K4_MATCHING, fig5_tree, single_edge_mmo
from lmda.graph import Graph, WeightedGraph, complete_graph, cycle_graph, path_graph, star_graph
from lmda.kernel import Kind, is_locally_minimal
from lmda.oracle import (
    GuardError, alliance_table, coloring_hit_fraction, exists_exact, is_maximal_matching,
    lm_sizes, lm_table, max_lm_alliance, min_max_outdegree, min_maximal_matching, outdegrees,
)


def test_fig5_strong_connected():
    res = max_lm_alliance(fig5_tree(), Kind.STRONG, connected=True)
    assert res.best_size == 3
    for w in FIG5_WITNESSES:
        assert w in res.witnesses
    # a third optimum, {x3, x4, x5}, is also locally minimal
    assert frozenset({2, 3, 4}) in res.witnesses
    assert res.optimal_count == 3


def test_small_examples():
    assert max_lm_alliance(path_graph(4)).best_size == 2
    assert max_lm_alliance(star_graph(3)).best_size == 1


def test_exists_exact_examples():
    k3 = complete_graph(3)
    pair = exists_exact(k3, 2, connected=True)
    assert pair is not None and len(pair) == 2
    assert exists_exact(k3, 3, connected=True) is None
    assert exists_exact(k3, 0) is None


def test_witnesses_lexicographic_and_checked():
    res = max_lm_alliance(cycle_graph(6))
    assert res.witnesses == sorted(res.witnesses, key=sorted)
    for w in res.witnesses:
        assert len(w) == res.best_size and is_locally_minimal(cycle_graph(6), w)


def test_guard():
    with pytest.raises(GuardError):
        max_lm_alliance(path_graph(25))
    with pytest.raises(GuardError):
        coloring_hit_fraction(path_graph(17), 2)


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("connected", [False, True])
def test_tables_match_kernel(kind, connected):
    for n in range(1, 5):
        for g in all_graphs(n):
            lm = lm_table(g, kind, connected)
            al = alliance_table(g, kind)
            for a in range(1 << n):
                s = frozenset(v for v in range(n) if a >> v & 1)
                assert bool(lm[a]) == is_locally_minimal(g, s, kind, connected_variant=connected)
                if s:
                    from lmda.kernel import is_alliance
                    assert bool(al[a]) == is_alliance(g, s, kind)


def test_max_of_exists_exact_equals_best():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 8), 0.4)
        for connected in (False, True):
            sizes = [k for k in range(1, g.n + 1) if exists_exact(g, k, connected=connected) is not None]
            assert max(sizes, default=0) == max_lm_alliance(g, connected=connected).best_size
            assert sorted(lm_sizes(g, connected=connected)) == sizes


def test_matching_examples():
    size, m = min_maximal_matching(complete_graph(4))
    assert size == 2 and is_maximal_matching(complete_graph(4), m)
    assert is_maximal_matching(complete_graph(4), K4_MATCHING)
    assert min_maximal_matching(path_graph(4)) == (1, [(1, 2)])
    assert min_maximal_matching(path_graph(2))[0] == 1


def test_matching_is_minimum_and_maximal():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 7), 0.5)
        size, m = min_maximal_matching(g)
        assert is_maximal_matching(g, m)
        smaller = [
            sub for k in range(size) for sub in itertools.combinations(g.edges(), k)
            if is_maximal_matching(g, sub)
        ]
        assert not smaller


def _brute_mmo(wg):
    best = None
    edges = wg.base.edges()
    for flips in itertools.product((False, True), repeat=len(edges)):
        out = [0] * wg.base.n
        for (u, v), f in zip(edges, flips):
            out[v if f else u] += wg.w(u, v)
        worst = max(out, default=0)
        best = worst if best is None else min(best, worst)
    return best


def test_orientation_examples():
    assert min_max_outdegree(single_edge_mmo())[0] == 1
    tri = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert min_max_outdegree(tri)[0] == 1
    star = WeightedGraph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    r, orient = min_max_outdegree(star)
    assert r == 1 and max(outdegrees(star, orient)) == 1


def test_orientation_optimal_by_exhaustion():
    rng = random.Random(9)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 6), 0.5)
        wg = WeightedGraph(g, {e: rng.randint(1, 3) for e in g.edges()})
        r, orient = min_max_outdegree(wg)
        assert max(outdegrees(wg, orient), default=0) == r
        assert r == _brute_mmo(wg)


def test_hit_fraction_k3():
    # any two vertices green with the third red: 3 of 8 colourings
    assert coloring_hit_fraction(complete_graph(3), 2) == 3 / 8
    assert coloring_hit_fraction(complete_graph(3), 3) == 0.0
