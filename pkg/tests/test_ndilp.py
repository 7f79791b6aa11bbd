import itertools
import random

import pytest

from conftest import nd_graph
from lmda.fixtures import fig1_tree
from lmda.graph import Graph, complete_graph, path_graph, star_graph
from lmda.kernel import Kind, is_locally_minimal
from lmda.ndilp import (
    MAX_ND, ClassKind, Constraint, IlpModel, Option, OptionAssignment, build_ilp,
    compute_type_partition, label, max_lmda_nd, solve_ilp, validate_labels,
)
from lmda.oracle import max_lm_alliance


def test_partition_examples():
    p = compute_type_partition(complete_graph(4))
    assert p.k == 1 and p.kinds == (ClassKind.CLIQUE,)
    p = compute_type_partition(star_graph(3))
    assert p.classes == ((0,), (1, 2, 3))
    assert p.kinds[1] is ClassKind.INDEPENDENT
    assert compute_type_partition(path_graph(4)).k == 4


def test_partition_invariants():
    rng = random.Random(3)
    for _ in range(100):
        g = nd_graph(rng)
        p = compute_type_partition(g)
        cls = {v: i for i, c in enumerate(p.classes) for v in c}
        for u, v in itertools.combinations(range(g.n), 2):
            twins = g.neighbor_sets[u] - {v} == g.neighbor_sets[v] - {u}
            assert (cls[u] == cls[v]) == twins
            if cls[u] != cls[v]:
                assert g.has_edge(u, v) == (cls[v] in p.type_adj[cls[u]])
        assert p.k <= 5


def _single(kind_graph, opt):
    p = compute_type_partition(kind_graph)
    return p, OptionAssignment((opt,))


def test_validate_examples():
    p, a = _single(complete_graph(3), Option.MANY_MARGINAL)
    assert label(p, a, 0) == "c>1" and validate_labels(p, a)
    p, a = _single(Graph.from_edges(3, []), Option.MANY_MARGINAL)
    assert label(p, a, 0) == "ind" and not validate_labels(p, a)
    # two adjacent classes, one op and one c1
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    p = compute_type_partition(g)
    assert p.k == 2
    a = OptionAssignment((Option.ONE_MARGINAL, Option.ONE_OVER))
    assert label(p, a, 0) == "c1" and label(p, a, 1) == "op"
    assert not validate_labels(p, a)


def test_k4_model():
    p, a = _single(complete_graph(4), Option.MANY_MARGINAL)
    model = build_ilp(p, a)
    assert model.domains == [(2, 3, 4)]
    (row,) = model.constraints
    assert row.coeffs == ((0, 2),) and row.const == -4 and row.values == (0, 1)
    assert solve_ilp(model) == (2, (2,))


def test_star_model():
    p = compute_type_partition(star_graph(3))
    a = OptionAssignment((Option.ONE_OVER, Option.MANY_MARGINAL))
    # the leaves are labelled ind and their only neighbour is op
    assert not validate_labels(p, a)
    with pytest.raises(ValueError):
        build_ilp(p, a)


def test_empty_and_contradictory_models():
    assert solve_ilp(IlpModel([], [], ())) == (0, ())
    rows = [Constraint(((0, 1),), -1, "in", (0,)), Constraint(((0, 1),), -2, "in", (0,))]
    assert solve_ilp(IlpModel([(1, 2)], rows, (0,))) is None


def test_toy_model_parity():
    model = IlpModel([(1, 2, 3), (1,)], [Constraint(((0, 2),), -3, "in", (0, -1))], (0, 1))
    assert solve_ilp(model) == (2, (1, 1))


def _brute(model):
    best = None
    for x in itertools.product(*model.domains):
        if model.feasible(x):
            val = sum(x[i] for i in model.objective)
            if best is None or val > best[0]:
                best = (val, x)
    return best


def test_solver_matches_enumeration():
    rng = random.Random(21)
    for _ in range(300):
        k = rng.randint(1, 4)
        domains = []
        for _ in range(k):
            lo = rng.randint(0, 2)
            domains.append(tuple(range(lo, lo + rng.randint(1, 4))))
        rows = []
        for _ in range(rng.randint(0, 3)):
            coeffs = tuple((i, rng.choice((1, 2, -1, -2, 3))) for i in sorted(rng.sample(range(k), rng.randint(1, k))))
            const = rng.randint(-8, 4)
            if rng.random() < 0.5:
                rows.append(Constraint(coeffs, const, ">"))
            else:
                rows.append(Constraint(coeffs, const, "in", tuple(rng.sample((-1, 0, 1), 2))))
        model = IlpModel(domains, rows, tuple(range(k)))
        got, want = solve_ilp(model), _brute(model)
        assert (got is None) == (want is None)
        if got:
            assert got[0] == want[0] and model.feasible(got[1])


def test_examples():
    assert max_lmda_nd(complete_graph(4)).size == 2
    assert max_lmda_nd(star_graph(3)).size == 1


def test_guard_on_fig1():
    assert compute_type_partition(fig1_tree()).k > MAX_ND
    with pytest.raises(ValueError):
        max_lmda_nd(fig1_tree())


def test_oracle_agreement():
    rng = random.Random(1)
    for _ in range(60):
        g = nd_graph(rng, max_n=12)
        res = max_lmda_nd(g)
        assert res.size == max_lm_alliance(g).best_size
        if res.size:
            assert is_locally_minimal(g, res.witness, Kind.ORDINARY)


def test_class_exchange_symmetry():
    rng = random.Random(8)
    checked = 0
    for _ in range(60):
        g = nd_graph(rng, max_n=12)
        res = max_lmda_nd(g)
        p = compute_type_partition(g)
        for _ in range(5):
            swapped = set()
            for c in p.classes:
                cnt = len(res.witness & set(c))
                swapped |= set(rng.sample(c, cnt))
            assert is_locally_minimal(g, swapped, Kind.ORDINARY) == is_locally_minimal(g, res.witness, Kind.ORDINARY)
            checked += 1
    assert checked == 300
