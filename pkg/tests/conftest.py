import itertools
import random

import pytest

from lmda.graph import Graph, tree_from_prufer


def all_graphs(n: int):
    """Every labelled graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_tree(rng: random.Random, n: int) -> Graph:
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    return tree_from_prufer([rng.randrange(n) for _ in range(n - 2)])


def nonisomorphic_trees(max_n: int):
    import networkx as nx

    for n in range(1, max_n + 1):
        for t in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            yield Graph.from_edges(n, list(t.edges()))


def random_partial_ktree(rng: random.Random, n: int, k: int, keep: float = 0.7) -> Graph:
    """Random subgraph of a k-tree, so the treewidth is at most k."""
    edges = set(itertools.combinations(range(min(n, k + 1)), 2))
    cliques = [tuple(range(min(n, k + 1)))]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        if len(base) > k:
            base = tuple(rng.sample(base, k))
        edges |= {(u, v) for u in base}
        cliques.append(base + (v,))
    kept = [e for e in edges if rng.random() < keep]
    return Graph.from_edges(n, kept)


def nd_graph(rng: random.Random, max_classes: int = 5, max_n: int = 16) -> Graph:
    """Classes that are cliques or independent sets, joined completely or not at all."""
    k = rng.randint(1, max_classes)
    sizes = [rng.randint(1, 4) for _ in range(k)]
    while sum(sizes) > max_n:
        sizes[rng.randrange(k)] = 1
    ids, c = [], 0
    for s in sizes:
        ids.append(list(range(c, c + s)))
        c += s
    edges = set()
    for i in range(k):
        if rng.random() < 0.5:
            edges |= set(itertools.combinations(ids[i], 2))
        for j in range(i + 1, k):
            if rng.random() < 0.5:
                edges |= {(u, v) for u in ids[i] for v in ids[j]}
    return Graph.from_edges(c, edges)


@pytest.fixture
def rng():
    return random.Random(7)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
