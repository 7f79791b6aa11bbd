import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_graphs, random_graph
from lmda.fixtures import FIG1_S1, FIG1_S2, fig1_tree
from lmda.graph import Graph, complete_graph, is_connected, path_graph, star_graph
from lmda.kernel import (
    Kind, Status, check_summary, classify, is_alliance, is_connected_alliance,
    is_globally_minimal, is_locally_minimal, is_locally_minimal_via_marginals, slack,
)


def literal_lm(g, s, kind, connected=False):
    """Remove each member and re-run the alliance test from scratch."""
    test = is_connected_alliance if connected else is_alliance
    return test(g, s, kind) and all(not test(g, s - {v}, kind) for v in s)


def test_classify_fig1():
    g = fig1_tree()
    r = classify(g, FIG1_S1, Kind.ORDINARY, 1)
    assert (r.slack, r.status) == (0, Status.MARGINAL)
    r = classify(g, FIG1_S1, Kind.ORDINARY, 6)
    assert (r.slack, r.status) == (1, Status.MARGINAL)


def test_classify_isolated_vertex():
    g = Graph.from_edges(1, [])
    r = classify(g, {0}, Kind.ORDINARY, 0)
    assert (r.slack, r.status) == (1, Status.OVERPROTECTED)


def test_classify_requires_member():
    with pytest.raises(ValueError):
        classify(path_graph(3), {0}, Kind.ORDINARY, 2)


def test_is_alliance_examples():
    g = fig1_tree()
    assert not is_alliance(g, set())
    assert is_alliance(path_graph(3), {0})
    assert is_alliance(g, FIG1_S1)


def test_connected_alliance_examples():
    g = fig1_tree()
    assert not is_connected_alliance(g, FIG1_S1)
    assert is_connected_alliance(g, FIG1_S2)
    assert is_connected_alliance(path_graph(3), {2})


def test_locally_minimal_examples():
    assert is_locally_minimal(fig1_tree(), FIG1_S1)
    assert not is_locally_minimal(path_graph(4), {0, 1})
    assert is_locally_minimal(path_graph(4), {1, 2})


def test_via_marginals_examples():
    assert is_locally_minimal_via_marginals(fig1_tree(), FIG1_S1)
    assert not is_locally_minimal_via_marginals(star_graph(3), {0, 1})
    assert classify(star_graph(3), {0, 1}, Kind.ORDINARY, 1).slack == 2
    assert is_locally_minimal_via_marginals(Graph.from_edges(1, []), {0})
    with pytest.raises(ValueError):
        is_locally_minimal_via_marginals(star_graph(3), {0})


def test_globally_minimal_examples():
    g = fig1_tree()
    assert is_globally_minimal(g, FIG1_S2)
    assert not is_globally_minimal(g, FIG1_S1)
    assert is_alliance(g, {1, 6})
    assert is_globally_minimal(path_graph(2), {0})
    with pytest.raises(ValueError):
        is_globally_minimal(path_graph(30), set(range(21)))


def test_strong_slack():
    g = path_graph(3)
    assert slack(g, {0, 1}, Kind.STRONG, 1) == 0
    assert slack(g, {0, 1}, Kind.ORDINARY, 1) == 1
    assert not is_alliance(g, {1}, Kind.STRONG)


def test_check_summary():
    out = check_summary(fig1_tree(), FIG1_S1)
    assert out == {"alliance": True, "connected": False, "locally_minimal": True}


graphs = st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
)


def _build(data):
    n, bits = data
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@settings(max_examples=300, deadline=None)
@given(graphs, st.integers(0, 255), st.sampled_from(list(Kind)))
def test_slack_parity_and_step(data, mask, kind):
    g = _build(data)
    s = {v for v in range(g.n) if mask >> v & 1}
    for v in range(g.n):
        base = slack(g, s, kind, v)
        parity = (g.degree(v) + (1 if kind is Kind.ORDINARY else 0)) % 2
        assert base % 2 == parity
        for u in g.neighbors(v):
            moved = s ^ {u}
            assert slack(g, moved, kind, v) - base == (2 if u not in s else -2)


@settings(max_examples=300, deadline=None)
@given(graphs, st.integers(1, 255), st.sampled_from(list(Kind)))
def test_characterization_property(data, mask, kind):
    g = _build(data)
    s = frozenset(v for v in range(g.n) if mask >> v & 1)
    if not s or not is_alliance(g, s, kind):
        return
    direct = literal_lm(g, s, kind)
    assert is_locally_minimal(g, s, kind) == direct
    assert is_locally_minimal_via_marginals(g, s, kind) == direct


@settings(max_examples=300, deadline=None)
@given(graphs, st.integers(1, 255), st.sampled_from(list(Kind)))
def test_connected_variant_matches_literal(data, mask, kind):
    g = _build(data)
    s = frozenset(v for v in range(g.n) if mask >> v & 1)
    if not s:
        return
    assert is_locally_minimal(g, s, kind, connected_variant=True) == literal_lm(g, s, kind, connected=True)


def test_superset_of_alliance_need_not_be_alliance():
    found = None
    for n in range(1, 7):
        for g in all_graphs(n):
            for a in range(1, 1 << n):
                s = {v for v in range(n) if a >> v & 1}
                if not is_alliance(g, s):
                    continue
                for v in set(range(n)) - s:
                    if not is_alliance(g, s | {v}):
                        found = (g, s, v)
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    assert found is not None
    g, s, v = found
    assert is_alliance(g, s) and not is_alliance(g, s | {v})


def test_connected_variant_implication_and_no_converse():
    rng = random.Random(3)
    implied = converse_broken = 0
    for _ in range(150):
        n = rng.randint(2, 8)
        g = random_graph(rng, n, 0.4)
        for a in range(1, 1 << n):
            s = frozenset(v for v in range(n) if a >> v & 1)
            strong_form = is_connected_alliance(g, s) and is_locally_minimal(g, s)
            weak_form = is_locally_minimal(g, s, connected_variant=True)
            if strong_form:
                implied += 1
                assert weak_form
            elif weak_form:
                converse_broken += 1
    assert implied > 0 and converse_broken > 0


def test_converse_counterexample_explicit():
    # dropping the centre leaves two leaves: an alliance, but not a connected one
    g = star_graph(4)
    s = frozenset({0, 1, 2})
    assert is_locally_minimal(g, s, connected_variant=True)
    assert not is_locally_minimal(g, s)
