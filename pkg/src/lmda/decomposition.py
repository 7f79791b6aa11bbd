"""Tree decompositions: construction from elimination orderings, nice form, text format."""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, ParseError

EXACT_WIDTH_LIMIT = 10


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _tree_errors(td: TreeDecomposition) -> list[str]:
    k = len(td.bags)
    if k == 0:
        return ["no bags"]
    if len(td.edges) != k - 1:
        return [f"{len(td.edges)} tree edges for {k} bags"]
    adj = td.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) != k:
        return ["decomposition tree is disconnected"]
    errors = []
    adj_sets = [set(a) for a in adj]
    for v in set().union(*td.bags):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        reach = {holders[0]}
        stack = [holders[0]]
        while stack:
            for b in adj_sets[stack.pop()]:
                if b not in reach and v in td.bags[b]:
                    reach.add(b)
                    stack.append(b)
        if len(reach) != len(holders):
            errors.append(f"bags holding vertex {v} are not connected")
    return errors


def decomposition_errors(g: Graph, td: TreeDecomposition) -> list[str]:
    errors = _tree_errors(td)
    covered = set().union(*td.bags) if td.bags else set()
    missing = [v for v in range(g.n) if v not in covered]
    if missing:
        errors.append(f"vertices in no bag: {missing}")
    extra = [v for v in covered if not 0 <= v < g.n]
    if extra:
        errors.append(f"bag vertices outside the graph: {sorted(extra)}")
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            errors.append(f"edge ({u}, {v}) in no bag")
    return errors


def from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    """Decomposition whose bags are the eliminated vertex plus its later neighbours."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adjacency]
    bags, later_of = [], []
    for v in order:
        later = {u for u in nbrs[v] if pos[u] > pos[v]}
        bags.append(frozenset(later | {v}))
        later_of.append(later)
        for u in later:
            nbrs[u] |= later - {u}
    edges, roots = [], []
    for i, later in enumerate(later_of):
        if later:
            edges.append((i, min(pos[u] for u in later)))
        else:
            roots.append(i)
    # join the components of a forest into one tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    if not bags:
        bags = [frozenset()]
    return TreeDecomposition(bags, edges)


def min_fill_order(g: Graph) -> list[int]:
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    order = []
    while alive:
        def fill(v):
            ns = list(nbrs[v])
            return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nbrs[a])
        v = min(alive, key=lambda v: (fill(v), len(nbrs[v]), v))
        order.append(v)
        alive.discard(v)
        for u in nbrs[v]:
            nbrs[u] |= nbrs[v] - {u}
            nbrs[u].discard(v)
        nbrs[v] = set()
    return order


def _q_size(g: Graph, s: int, v: int) -> int:
    """Vertices outside s + v reachable from v through s."""
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        x = stack.pop()
        m = g.masks[x] & ~seen
        seen |= m
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if s >> u & 1:
                stack.append(u)
            else:
                out += 1
    return out


def exact_order(g: Graph) -> list[int]:
    """Elimination ordering of minimum width by dynamic programming over vertex subsets."""
    n = g.n
    best = [0] * (1 << n)
    pick = [-1] * (1 << n)
    best[0] = -1
    for s in range(1, 1 << n):
        val, arg = None, -1
        m = s
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rest = s ^ low
            cand = max(best[rest], _q_size(g, rest, v))
            if val is None or cand < val:
                val, arg = cand, v
        best[s], pick[s] = val, arg
    order = []
    s = (1 << n) - 1
    while s:
        v = pick[s]
        order.append(v)
        s ^= 1 << v
    return order[::-1]


def decompose(g: Graph, exact_limit: int = EXACT_WIDTH_LIMIT) -> TreeDecomposition:
    order = exact_order(g) if g.n <= exact_limit else min_fill_order(g)
    td = from_ordering(g, order)
    errors = decomposition_errors(g, td)
    assert not errors, errors
    return td


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf, introduce, forget, join
    bag: tuple[int, ...]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass
class NiceDecomposition:
    # children always precede their parent
    nodes: list[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max(len(x.bag) for x in self.nodes) - 1


def make_nice(td: TreeDecomposition, root: int = 0) -> NiceDecomposition:
    errors = _tree_errors(td)
    if errors:
        raise ValueError("invalid tree decomposition: " + "; ".join(errors))
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=None, children=()):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def forget(v, top):
        return add("forget", set(nodes[top].bag) - {v}, v, (top,))

    def introduce(v, top):
        return add("introduce", set(nodes[top].bag) | {v}, v, (top,))

    adj = td.adjacency()
    parent = {root: None}
    order = [root]
    for t in order:
        for c in adj[t]:
            if c not in parent:
                parent[c] = t
                order.append(c)
    tops: dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        arms = []
        for c in adj[t]:
            if c == parent[t]:
                continue
            top = tops[c]
            for v in sorted(td.bags[c] - bag):
                top = forget(v, top)
            for v in sorted(bag - td.bags[c]):
                top = introduce(v, top)
            arms.append(top)
        if not arms:
            top = add("leaf", ())
            for v in sorted(bag):
                top = introduce(v, top)
            arms.append(top)
        top = arms[0]
        for other in arms[1:]:
            top = add("join", bag, None, (top, other))
        tops[t] = top
    top = tops[root]
    for v in sorted(td.bags[root]):
        top = forget(v, top)
    nd = NiceDecomposition(nodes, top)
    errors = nice_errors(nd)
    assert not errors, errors
    return nd


def nice_errors(nd: NiceDecomposition) -> list[str]:
    errors = []
    for i, node in enumerate(nd.nodes):
        kids = [nd.nodes[c] for c in node.children]
        if any(c >= i for c in node.children):
            errors.append(f"node {i} precedes a child")
        if node.kind == "leaf":
            ok = not kids and node.bag == ()
        elif node.kind == "introduce":
            ok = len(kids) == 1 and node.vertex not in kids[0].bag and set(node.bag) == set(kids[0].bag) | {node.vertex}
        elif node.kind == "forget":
            ok = len(kids) == 1 and node.vertex in kids[0].bag and set(node.bag) == set(kids[0].bag) - {node.vertex}
        elif node.kind == "join":
            ok = len(kids) == 2 and kids[0].bag == node.bag == kids[1].bag
        else:
            ok = False
        if not ok:
            errors.append(f"node {i} ({node.kind}) violates its local condition")
    if nd.nodes[nd.root].bag != ():
        errors.append("root bag is not empty")
    return errors


def nice_decomposition_errors(g: Graph, nd: NiceDecomposition) -> list[str]:
    """Local conditions plus the decomposition conditions against g."""
    errors = nice_errors(nd)
    edges = []
    for i, node in enumerate(nd.nodes):
        edges.extend((c, i) for c in node.children)
    td = TreeDecomposition([frozenset(x.bag) for x in nd.nodes], edges)
    return errors + decomposition_errors(g, td)


def parse_decomposition(text: str) -> TreeDecomposition:
    """Lines ``id: v1 v2 ...`` define bags; lines ``id1 id2`` join two bags.

    Bag ids are arbitrary integers, vertices are 1-based; ``#`` starts a comment.
    """
    ids: dict[int, int] = {}
    bags: list[frozenset[int]] = []
    raw_edges: list[tuple[int, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if ":" in line:
                head, tail = line.split(":", 1)
                bid = int(head)
                if bid in ids:
                    raise ParseError(lineno, f"bag {bid} defined twice")
                verts = [int(t) - 1 for t in tail.split()]
                if any(v < 0 for v in verts):
                    raise ParseError(lineno, "vertex ids are 1-based")
                ids[bid] = len(bags)
                bags.append(frozenset(verts))
            else:
                parts = line.split()
                if len(parts) != 2:
                    raise ParseError(lineno, "expected 'id: vertices' or 'id id'")
                raw_edges.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, f"not an integer: {exc}") from None
    edges = []
    for lineno, a, b in raw_edges:
        if a not in ids or b not in ids:
            raise ParseError(lineno, f"unknown bag in edge {a} {b}")
        edges.append((ids[a], ids[b]))
    return TreeDecomposition(bags, edges)


def serialize_decomposition(td: TreeDecomposition) -> str:
    lines = [f"{i + 1}: " + " ".join(str(v + 1) for v in sorted(b)) for i, b in enumerate(td.bags)]
    lines += [f"{a + 1} {b + 1}" for a, b in td.edges]
    return "\n".join(lines) + "\n"
