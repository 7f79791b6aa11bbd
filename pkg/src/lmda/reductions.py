"""Gadget constructions for the hardness reductions, with witness builders and checkers.

Every generator returns an ``AnnotatedInstance`` carrying a layout: named
vertex groups, so witness builders and tests never recompute ids.  Only the
forward direction is executable: a source certificate is turned into a
target certificate and the target certificate is checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, PendantGraph, WeightedGraph
from .kernel import Kind, is_locally_minimal
from .oracle import is_maximal_matching

VARIANTS = ("FN", "F", "plain", "exact")


@dataclass
class AnnotatedInstance:
    graph: Graph | PendantGraph
    k: int
    necessary: frozenset[int] = frozenset()
    forbidden: frozenset[int] = frozenset()
    variant: str = "plain"
    connected: bool = False
    layout: dict[str, list[int]] = field(default_factory=dict)
    closed_form_k: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.necessary & self.forbidden:
            raise ValueError("a vertex cannot be both necessary and forbidden")
        if self.variant == "F" and self.necessary:
            raise ValueError("variant F has no necessary vertices")
        if self.variant in ("plain", "exact") and (self.necessary or self.forbidden):
            raise ValueError(f"variant {self.variant} carries no annotations")


def check_annotated(inst: AnnotatedInstance, s) -> bool:
    s = frozenset(s)
    if not inst.necessary <= s or inst.forbidden & s:
        return False
    if inst.variant == "exact":
        if len(s) != inst.k:
            return False
    elif len(s) < inst.k:
        return False
    return is_locally_minimal(inst.graph, s, Kind.ORDINARY, connected_variant=inst.connected)


class _Builder:
    """Adjacency lists grown group by group; cheaper than edge sets at 10^6 vertices."""

    def __init__(self, base: Graph | None = None):
        self.adj: list[list[int]] = [list(a) for a in base.adjacency] if base else []
        self.layout: dict[str, list[int]] = {}

    @property
    def n(self) -> int:
        return len(self.adj)

    def add(self, group: str, count: int) -> list[int]:
        start = len(self.adj)
        self.adj.extend([] for _ in range(count))
        ids = list(range(start, start + count))
        self.layout.setdefault(group, []).extend(ids)
        return ids

    def edge(self, u: int, v: int):
        self.adj[u].append(v)
        self.adj[v].append(u)

    def graph(self) -> Graph:
        adjacency = []
        for v, a in enumerate(self.adj):
            t = tuple(sorted(a))
            if len(set(t)) != len(t) or v in t:
                raise AssertionError(f"construction produced a multi-edge or loop at {v}")
            adjacency.append(t)
        return Graph(len(adjacency), tuple(adjacency))


# Minimum maximal matching on cubic graphs -> plain instance

def mmm_closed_form_k(n: int, m: int, k: int) -> int:
    return 4 * (n + m) * (n + 2 * m) + (n + m - k)


def reduce_mmm_to_lmda(g: Graph, k: int, require_cubic: bool = True) -> AnnotatedInstance:
    if require_cubic and any(g.degree(v) != 3 for v in range(g.n)):
        raise ValueError("input graph is not cubic")
    n, edges = g.n, g.edges()
    m = len(edges)
    b = _Builder()
    A = b.add("A", n)
    B = b.add("B", m)
    for j, (u, v) in enumerate(edges):
        b.edge(A[u], B[j])
        b.edge(A[v], B[j])
    vsq = b.add("Vsq", n)
    for i in range(n):
        b.edge(A[i], vsq[i])
    esq = b.add("Esq", 2 * m)
    for j in range(m):
        b.edge(B[j], esq[2 * j])
        b.edge(B[j], esq[2 * j + 1])
    length = 6 * (n + m)
    for x in vsq + esq:
        cyc = b.add(f"C[{x}]", length)
        for i in range(length):
            b.edge(cyc[i], cyc[(i + 1) % length])
            b.edge(x, cyc[i])
    b.layout["hubs"] = vsq + esq
    b.layout["edges"] = [u for e in edges for u in e]
    kk = mmm_closed_form_k(n, m, k)
    return AnnotatedInstance(b.graph(), kk, variant="plain", layout=b.layout, closed_form_k=kk)


def mmm_witness(g: Graph, matching, inst: AnnotatedInstance) -> frozenset[int]:
    matching = [tuple(sorted(e)) for e in matching]
    if not is_maximal_matching(g, matching):
        raise ValueError("matching is not maximal")
    lay = inst.layout
    flat = lay["edges"]
    edge_index = {(flat[2 * j], flat[2 * j + 1]): j for j in range(len(flat) // 2)}
    in_m = {edge_index[e] for e in matching}
    d = set(lay["A"])
    d.update(x for j, x in enumerate(lay["B"]) if j not in in_m)
    for hub in lay["hubs"]:
        cyc = lay[f"C[{hub}]"]
        # keep x_i for i not divisible by 3 (1-based)
        d.update(c for i, c in enumerate(cyc, 1) if i % 3)
    return frozenset(d)


# Minimum maximum outdegree -> FN instance

@dataclass(frozen=True)
class ComplementaryPair:
    left: int   # u^v_i, hangs on u
    right: int  # v^u_j, hangs on v
    tri: int
    sq: int
    tri2: int


def mmo_sizes(wg: WeightedGraph, r: int) -> dict[str, int]:
    n, omega = wg.base.n, wg.total_weight
    pairs = sum(2 * w - 1 for w in wg.weight.values())
    return {
        "n": n,
        "omega": omega,
        "pairs": pairs,
        "vertices": n * (4 * r + 2) + 4 * omega + 3 * pairs,
        "closed_form_k": n * (r + 1) + omega + 2 * pairs,
        "witness_k": n * (r + 1) + 2 * omega + 2 * pairs,
    }


def reduce_mmo_to_lmda_fn(wg: WeightedGraph, r: int) -> AnnotatedInstance:
    if r < 0:
        raise ValueError("r must be non-negative")
    g = wg.base
    b = _Builder()
    V = b.add("V", g.n)
    vsq = b.add("Vsq", g.n)
    for v in V:
        b.edge(v, vsq[v])
        hs = b.add(f"H[{v}]", 2 * r)
        hsq = b.add(f"Hsq[{v}]", 2 * r)
        for h, q in zip(hs, hsq):
            b.edge(v, h)
            b.edge(h, q)
        b.layout.setdefault("H", []).extend(hs)
        b.layout.setdefault("Hsq", []).extend(hsq)
    pairs: list[ComplementaryPair] = []
    for u, v in g.edges():
        w = wg.w(u, v)
        groups = {}
        for a, c in ((u, v), (v, u)):
            side = b.add(f"V[{a},{c}]", w)
            side_sq = b.add(f"Vsq[{a},{c}]", w)
            for x in side + side_sq:
                b.edge(a, x)
            b.layout.setdefault("Vsq_all", []).extend(side_sq)
            groups[a] = side
        uv, vu = groups[u], groups[v]
        links = [(uv[i], vu[i]) for i in range(w)] + [(uv[i + 1], vu[i]) for i in range(w - 1)]
        for left, right in links:
            tri, sq, tri2 = b.add("tri", 1)[0], b.add("sq", 1)[0], b.add("tri2", 1)[0]
            for x, y in ((tri, sq), (tri, tri2), (tri2, sq), (left, tri), (tri, right)):
                b.edge(x, y)
            pairs.append(ComplementaryPair(left, right, tri, sq, tri2))
            b.layout.setdefault("pair_left", []).append(left)
            b.layout.setdefault("pair_right", []).append(right)
    sizes = mmo_sizes(wg, r)
    graph = b.graph()
    assert graph.n == sizes["vertices"], (graph.n, sizes)
    assert len(pairs) == sizes["pairs"]
    lay = b.layout
    necessary = frozenset(V) | frozenset(lay.get("tri", [])) | frozenset(lay.get("tri2", []))
    forbidden = (
        frozenset(vsq) | frozenset(lay.get("Hsq", [])) | frozenset(lay.get("Vsq_all", []))
        | frozenset(lay.get("sq", []))
    )
    return AnnotatedInstance(
        graph, sizes["witness_k"], necessary, forbidden, "FN", False, lay, sizes["closed_form_k"],
    )


def mmo_witness(wg: WeightedGraph, r: int, orientation, inst: AnnotatedInstance) -> frozenset[int]:
    """The certificate of a feasible orientation (``edge -> (tail, head)``)."""
    out = [0] * wg.base.n
    for (u, v), (tail, head) in orientation.items():
        if {tail, head} != {u, v}:
            raise ValueError(f"orientation of ({u}, {v}) names other endpoints")
        out[tail] += wg.w(u, v)
    if any(o > r for o in out):
        raise ValueError(f"orientation has outdegree {max(out)} > r = {r}")
    lay = inst.layout
    s = set(inst.necessary)
    for (u, v), (tail, head) in orientation.items():
        s.update(lay[f"V[{head},{tail}]"])
    for v in range(wg.base.n):
        s.update(lay[f"H[{v}]"][: r + out[v]])
    s = frozenset(s)
    assert len(s) == inst.k, (len(s), inst.k)
    assert check_annotated(inst, s)
    return s


# FN -> connected FN -> connected F -> exact

def fn_to_connected_fn(inst: AnnotatedInstance) -> AnnotatedInstance:
    if inst.variant != "FN":
        raise ValueError("expected an FN instance")
    g = inst.graph
    n = g.n
    b = _Builder(g)
    h = b.add("h", 1)[0]
    t = b.add("t", 1)[0]
    for u in range(n):
        b.edge(u, h)
        b.edge(u, t)
    ring = b.add("ring", 4 * n)
    for i, x in enumerate(ring):
        b.edge(h, x)
        b.edge(x, ring[(i + 1) % len(ring)])
        for q in b.add("ring_sq", 4):
            b.edge(x, q)
    layout = dict(inst.layout)
    layout.update(b.layout)
    return AnnotatedInstance(
        b.graph(), inst.k + 4 * n + 1,
        inst.necessary | {h} | frozenset(ring),
        inst.forbidden | {t} | frozenset(b.layout["ring_sq"]),
        "FN", True, layout,
    )


def connected_fn_witness(inst: AnnotatedInstance, s) -> frozenset[int]:
    return frozenset(s) | set(inst.layout["h"]) | set(inst.layout["ring"])


def fn_to_f(inst: AnnotatedInstance) -> AnnotatedInstance:
    if inst.variant != "FN":
        raise ValueError("expected an FN instance")
    g = inst.graph
    n = g.n
    b = _Builder(g)
    for u in sorted(inst.necessary):
        u1 = b.add("u1", 1)[0]
        u2 = b.add("u2", 1)[0]
        b.edge(u, u1)
        b.edge(u, u2)
        rim = b.add("u1_rim", 4 * n)
        for i, x in enumerate(rim):
            b.edge(u1, x)
            # the rim is a cycle, otherwise its vertices are unprotected
            b.edge(x, rim[(i + 1) % len(rim)])
            for q in b.add("rim_sq", 4):
                b.edge(x, q)
    layout = {key: val for key, val in inst.layout.items()}
    layout.update(b.layout)
    return AnnotatedInstance(
        b.graph(), inst.k + (4 * n + 1) * len(inst.necessary),
        frozenset(),
        inst.forbidden | frozenset(b.layout.get("u2", [])) | frozenset(b.layout.get("rim_sq", [])),
        "F", inst.connected, layout,
    )


def f_witness(inst_f: AnnotatedInstance, s) -> frozenset[int]:
    return frozenset(s) | set(inst_f.layout.get("u1", [])) | set(inst_f.layout.get("u1_rim", []))


def f_to_exact(inst: AnnotatedInstance) -> AnnotatedInstance:
    """Hang 2n degree-one vertices on every forbidden vertex.

    The result is a ``PendantGraph``: the pendants are virtual, which keeps
    chained instances with 10^11 vertices representable.
    """
    if inst.variant != "F":
        raise ValueError("expected an F instance")
    g = inst.graph
    if inst.k > g.n:
        raise ValueError(f"k = {inst.k} exceeds n = {g.n}")
    if not inst.forbidden:
        return AnnotatedInstance(g, inst.k, variant="exact", connected=True, layout=dict(inst.layout))
    owners = tuple(sorted(inst.forbidden))
    pg = PendantGraph(g, owners, tuple(2 * g.n for _ in owners))
    return AnnotatedInstance(pg, inst.k, variant="exact", connected=True, layout=dict(inst.layout))


@dataclass
class ChainStage:
    name: str
    instance: AnnotatedInstance
    witness: frozenset[int]
    valid: bool


def mmo_chain(wg: WeightedGraph, r: int, orientation) -> list[ChainStage]:
    """Push one orientation certificate through every stage and check each."""
    fn = reduce_mmo_to_lmda_fn(wg, r)
    s = mmo_witness(wg, r, orientation, fn)
    stages = [ChainStage("FN", fn, s, check_annotated(fn, s))]
    cfn = fn_to_connected_fn(fn)
    s = connected_fn_witness(cfn, s)
    stages.append(ChainStage("connected FN", cfn, s, check_annotated(cfn, s)))
    f = fn_to_f(cfn)
    s = f_witness(f, s)
    stages.append(ChainStage("connected F", f, s, check_annotated(f, s)))
    ex = f_to_exact(f)
    stages.append(ChainStage("exact", ex, s, check_annotated(ex, s)))
    return stages
