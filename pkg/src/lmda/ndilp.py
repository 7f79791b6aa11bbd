"""Maximum locally minimal defensive alliance via type classes and a small ILP.

Vertices with the same neighbourhood (up to each other) form a type class;
each class is a clique or an independent set.  For every way of choosing one
of five options per class we validate the marginal-neighbour labelling and
solve an integer program over the class counts x_i.  The program is tiny
(one variable per class, domain at most the class size), so it is solved by
bounded exhaustive search rather than a general ILP solver.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product

from .graph import Graph
from .kernel import Kind, is_locally_minimal

MAX_ND = 12


class Option(enum.IntEnum):
    EMPTY = 0
    ONE_MARGINAL = 1
    ONE_OVER = 2
    MANY_MARGINAL = 3
    MANY_OVER = 4

    @property
    def marginal(self) -> bool:
        return self in (Option.ONE_MARGINAL, Option.MANY_MARGINAL)

    @property
    def many(self) -> bool:
        return self in (Option.MANY_MARGINAL, Option.MANY_OVER)


class ClassKind(str, enum.Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class TypePartition:
    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[ClassKind, ...]
    # type graph adjacency between class indices
    type_adj: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.classes)

    def closed(self, j: int) -> list[int]:
        return sorted(self.type_adj[j] | {j})


def _same_type(g: Graph, u: int, v: int) -> bool:
    return g.neighbor_sets[u] - {v} == g.neighbor_sets[v] - {u}


def compute_type_partition(g: Graph) -> TypePartition:
    """Minimum partition into type classes.

    Twins share either their open or their closed neighbourhood, so grouping
    by both keys finds every class; the pairwise relation is re-checked.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for keyf in (lambda v: g.neighbor_sets[v], lambda v: g.neighbor_sets[v] | {v}):
        first: dict[frozenset, int] = {}
        for v in range(g.n):
            key = keyf(v)
            if key in first:
                parent[find(v)] = find(first[key])
            else:
                first[key] = v
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    classes = sorted((tuple(c) for c in groups.values()), key=lambda c: c[0])
    for c in classes:
        for u in c:
            for v in c:
                if u < v and not _same_type(g, u, v):
                    raise AssertionError(f"{u} and {v} grouped but not twins")
    kinds = []
    for c in classes:
        # singletons are recorded as cliques
        if len(c) == 1 or g.has_edge(c[0], c[1]):
            kinds.append(ClassKind.CLIQUE)
        else:
            kinds.append(ClassKind.INDEPENDENT)
    cls_of = {v: i for i, c in enumerate(classes) for v in c}
    adj = [set() for _ in classes]
    for u, v in g.edges():
        a, b = cls_of[u], cls_of[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    for a, nbrs in enumerate(adj):
        for b in nbrs:
            assert all(g.has_edge(u, v) for u in classes[a] for v in classes[b])
    return TypePartition(tuple(classes), tuple(kinds), tuple(frozenset(s) for s in adj))


@dataclass(frozen=True)
class OptionAssignment:
    options: tuple[Option, ...]

    def selected(self) -> list[int]:
        return [i for i, o in enumerate(self.options) if o is not Option.EMPTY]


def label(p: TypePartition, a: OptionAssignment, i: int) -> str | None:
    opt = a.options[i]
    if opt is Option.EMPTY:
        return None
    if not opt.marginal:
        return "op"
    if p.kinds[i] is ClassKind.INDEPENDENT:
        return "ind"
    return "c1" if opt is Option.ONE_MARGINAL else "c>1"


def validate_labels(p: TypePartition, a: OptionAssignment) -> bool:
    """Every op, c1 and ind class needs a neighbouring class labelled c1, c>1 or ind."""
    labels = [label(p, a, i) for i in range(p.k)]
    for i, lab in enumerate(labels):
        if lab in ("op", "c1", "ind"):
            if not any(labels[j] in ("c1", "c>1", "ind") for j in p.type_adj[i]):
                return False
    return True


@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[i] * x_i) + const`` is ``> 0`` or lies in ``values``."""

    coeffs: tuple[tuple[int, int], ...]
    const: int
    relation: str  # ">" or "in"
    values: tuple[int, ...] = ()

    def holds(self, x) -> bool:
        val = sum(c * x[i] for i, c in self.coeffs) + self.const
        if self.relation == ">":
            return val > 0
        return val in self.values


@dataclass
class IlpModel:
    domains: list[tuple[int, ...]]
    constraints: list[Constraint] = field(default_factory=list)
    objective: tuple[int, ...] = ()

    def feasible(self, x) -> bool:
        return all(x[i] in d for i, d in enumerate(self.domains)) and all(c.holds(x) for c in self.constraints)


def build_ilp(p: TypePartition, a: OptionAssignment) -> IlpModel:
    if not validate_labels(p, a):
        raise ValueError("option assignment violates the labelling rules")
    sizes = [len(c) for c in p.classes]
    chosen = set(a.selected())
    domains: list[tuple[int, ...]] = []
    for i, opt in enumerate(a.options):
        if opt is Option.EMPTY:
            domains.append((0,))
        elif opt.many:
            domains.append(tuple(range(2, sizes[i] + 1)))
        else:
            domains.append((1,))
    rows = []
    for j in sorted(chosen):
        lab = label(p, a, j)
        if p.kinds[j] is ClassKind.INDEPENDENT:
            hood = sorted(p.type_adj[j])
            coeffs = tuple((i, 2) for i in hood if i in chosen)
            total = sum(sizes[i] for i in hood)
            if lab == "op":
                rows.append(Constraint(coeffs, 1 - total, ">"))
            else:
                rows.append(Constraint(coeffs, -total, "in", (0, -1)))
        else:
            hood = p.closed(j)
            coeffs = tuple((i, 2) for i in hood if i in chosen)
            total = sum(sizes[i] for i in hood)
            if lab == "op":
                rows.append(Constraint(coeffs, -total, ">"))
            else:
                rows.append(Constraint(coeffs, -total, "in", (0, 1)))
    return IlpModel(domains, rows, tuple(sorted(chosen)))


def _parity_prune(model: IlpModel) -> list[Constraint] | None:
    """Drop disjunctive branches whose parity can never match; None if a row dies."""
    out = []
    for c in model.constraints:
        if c.relation == "in" and all(coef % 2 == 0 for _, coef in c.coeffs):
            keep = tuple(v for v in c.values if (v - c.const) % 2 == 0)
            if not keep:
                return None
            c = Constraint(c.coeffs, c.const, "in", keep)
        out.append(c)
    return out


def solve_ilp(model: IlpModel) -> tuple[int, tuple[int, ...]] | None:
    """Maximum objective over feasible points; ties go to the first point found.

    Depth-first over the variables in index order, larger values first, with
    interval bounds on every row and on the objective.
    """
    rows = _parity_prune(model)
    if rows is None:
        return None
    k = len(model.domains)
    doms = [sorted(d, reverse=True) for d in model.domains]
    if any(not d for d in doms):
        return None
    obj = set(model.objective)
    lo = [min(d) for d in doms]
    hi = [max(d) for d in doms]
    best: list = [None, None]
    x = [0] * k

    def row_possible(c: Constraint, depth: int) -> bool:
        vmin = vmax = c.const
        for i, coef in c.coeffs:
            if i < depth:
                vmin += coef * x[i]
                vmax += coef * x[i]
            else:
                a, b = coef * lo[i], coef * hi[i]
                vmin += min(a, b)
                vmax += max(a, b)
        if c.relation == ">":
            return vmax > 0
        return any(vmin <= v <= vmax for v in c.values)

    def rec(depth: int, value: int):
        if best[0] is not None:
            bound = value + sum(hi[i] for i in range(depth, k) if i in obj)
            if bound <= best[0]:
                return
        if not all(row_possible(c, depth) for c in rows):
            return
        if depth == k:
            if all(c.holds(x) for c in rows):
                best[0], best[1] = value, tuple(x)
            return
        for val in doms[depth]:
            x[depth] = val
            rec(depth + 1, value + (val if depth in obj else 0))
        x[depth] = 0

    rec(0, 0)
    if best[0] is None:
        return None
    return best[0], best[1]


@dataclass
class NdResult:
    nd: int
    size: int
    witness: frozenset[int]
    assignments_tried: int
    assignment: OptionAssignment | None = None


def materialize(p: TypePartition, x) -> frozenset[int]:
    return frozenset(v for i, c in enumerate(p.classes) for v in c[: x[i]])


def max_lmda_nd(g: Graph) -> NdResult:
    p = compute_type_partition(g)
    if p.k > MAX_ND:
        raise ValueError(f"neighbourhood diversity {p.k} exceeds the limit {MAX_ND}")
    best = NdResult(p.k, 0, frozenset(), 0)
    # a single vertex of degree at most one is a locally minimal alliance by itself,
    # and the labelling rules cannot express it
    for v in range(g.n):
        if g.degree(v) <= 1:
            best.size, best.witness = 1, frozenset({v})
            break
    tried = 0
    for opts in product(list(Option), repeat=p.k):
        a = OptionAssignment(opts)
        if not a.selected():
            continue
        # a class of one vertex cannot hold two
        if any(o.many and len(p.classes[i]) < 2 for i, o in enumerate(opts)):
            continue
        tried += 1
        if not validate_labels(p, a):
            continue
        sol = solve_ilp(build_ilp(p, a))
        if sol is None:
            continue
        size, x = sol
        if size > best.size:
            witness = materialize(p, x)
            assert is_locally_minimal(g, witness, Kind.ORDINARY), (opts, x)
            best.size, best.witness, best.assignment = size, witness, a
    best.assignments_tried = tried
    if best.size:
        assert is_locally_minimal(g, best.witness, Kind.ORDINARY)
    return best
