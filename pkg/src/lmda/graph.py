"""Simple undirected graphs, the edge-list text format, and elementary queries.

Vertex ids are 0-based internally and 1-based in text.  A vertex set is any
``frozenset`` (or ``set``) of ids; every checker and solver in the package
trades in those.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

VertexSet = frozenset


class ParseError(ValueError):
    """Malformed edge-list input; ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph with sorted adjacency tuples."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an integer bitmask."""
        out = []
        for a in self.adjacency:
            mask = 0
            for u in a:
                mask |= 1 << u
            out.append(mask)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Sequence[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    base: Graph
    weight: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        edges = set(self.base.edges())
        keys = {_norm(u, v) for u, v in self.weight}
        if keys != edges or len(keys) != len(self.weight):
            raise ValueError("weights must cover every edge exactly once")
        if any(w < 1 for w in self.weight.values()):
            raise ValueError("edge weights must be positive integers")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> WeightedGraph:
        edges = list(edges)
        base = Graph.from_edges(n, [(u, v) for u, v, _ in edges])
        return cls(base, {_norm(u, v): w for u, v, w in edges})

    def w(self, u: int, v: int) -> int:
        return self.weight[_norm(u, v)]

    @property
    def total_weight(self) -> int:
        return sum(self.weight.values())


@dataclass(frozen=True, eq=False)
class PendantGraph:
    """A core graph plus blocks of degree-one vertices hung on core vertices.

    Pendant ids follow the core ids: the block of vertex ``owners[i]`` holds
    ``counts[i]`` consecutive ids.  Used where materialising the pendants
    would need billions of vertices; all queries answer exactly as for the
    expanded graph.
    """

    core: Graph
    owners: tuple[int, ...]
    counts: tuple[int, ...]

    @cached_property
    def _blocks(self) -> dict[int, tuple[int, int]]:
        out = {}
        start = self.core.n
        for owner, cnt in zip(self.owners, self.counts):
            if owner in out:
                raise ValueError(f"vertex {owner} owns two pendant blocks")
            out[owner] = (start, cnt)
            start += cnt
        return out

    @cached_property
    def _starts(self) -> list[int]:
        starts, s = [], self.core.n
        for c in self.counts:
            starts.append(s)
            s += c
        return starts

    @cached_property
    def n(self) -> int:
        return self.core.n + sum(self.counts)

    @cached_property
    def m(self) -> int:
        return self.core.m + sum(self.counts)

    def owner_of(self, p: int) -> int:
        from bisect import bisect_right

        i = bisect_right(self._starts, p) - 1
        return self.owners[i]

    def degree(self, v: int) -> int:
        if v < self.core.n:
            return self.core.degree(v) + self._blocks.get(v, (0, 0))[1]
        return 1

    def neighbors(self, v: int) -> Sequence[int]:
        if v < self.core.n:
            block = self._blocks.get(v)
            if block is None:
                return self.core.adjacency[v]
            return _Concat(self.core.adjacency[v], range(block[0], block[0] + block[1]))
        return (self.owner_of(v),)

    def has_edge(self, u: int, v: int) -> bool:
        if u < self.core.n and v < self.core.n:
            return self.core.has_edge(u, v)
        if u >= self.core.n and v >= self.core.n:
            return False
        p, c = (u, v) if u >= self.core.n else (v, u)
        return self.owner_of(p) == c

    def vertices(self) -> range:
        return range(self.n)

    def materialize(self, limit: int = 2_000_000) -> Graph:
        if self.n > limit:
            raise ValueError(f"refusing to materialise {self.n} vertices")
        edges = list(self.core.edges())
        for owner, (start, cnt) in self._blocks.items():
            edges.extend((owner, p) for p in range(start, start + cnt))
        return Graph.from_edges(self.n, edges)

    def __repr__(self) -> str:
        return f"PendantGraph(core={self.core!r}, pendants={sum(self.counts)})"


class _Concat(Sequence):
    def __init__(self, a: Sequence[int], b: Sequence[int]):
        self.a, self.b = a, b

    def __len__(self):
        return len(self.a) + len(self.b)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        return self.a[i] if i < len(self.a) else self.b[i - len(self.a)]

    def __iter__(self):
        yield from self.a
        yield from self.b


def parse_graph(text: str) -> Graph | WeightedGraph:
    """Parse the edge-list format: header ``n m`` then ``u v [w]`` lines, 1-based.

    Returns a WeightedGraph when edge lines carry a third token (all of them
    must, then).  Blank lines and ``#`` comments are skipped.
    """
    lines = [(i + 1, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise ParseError(1, "missing header line 'n m'")
    hline, header = lines[0]
    if len(header) != 2:
        raise ParseError(hline, "header must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(hline, "header must contain two integers") from None
    if n < 0 or m < 0:
        raise ParseError(hline, "negative header value")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else hline + 1)
        raise ParseError(where, f"expected {m} edge lines, found {len(body)}")

    weighted = None
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, toks in body:
        if len(toks) not in (2, 3):
            raise ParseError(lineno, "edge line must be 'u v' or 'u v w'")
        is_w = len(toks) == 3
        if weighted is None:
            weighted = is_w
        elif weighted != is_w:
            raise ParseError(lineno, "mixed weighted and unweighted edge lines")
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise ParseError(lineno, "non-integer token") from None
        u, v = vals[0] - 1, vals[1] - 1
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex id out of range 1..{n}")
        if u == v:
            raise ParseError(lineno, "self-loop")
        key = _norm(u, v)
        if key in seen:
            raise ParseError(lineno, "duplicate edge")
        seen.add(key)
        if is_w and vals[2] < 1:
            raise ParseError(lineno, "weight must be a positive integer")
        edges.append((u, v, vals[2]) if is_w else (u, v))
    if weighted:
        return WeightedGraph.from_edges(n, edges)
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph | WeightedGraph) -> str:
    if isinstance(g, WeightedGraph):
        lines = [f"{g.base.n} {g.base.m}"]
        lines += [f"{u + 1} {v + 1} {g.w(u, v)}" for u, v in g.base.edges()]
    else:
        lines = [f"{g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph | WeightedGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def degree(g, v: int) -> int:
    return g.degree(v)


def degrees_within(g, s, v: int) -> tuple[int, int]:
    """(d_S(v), d_{S^c}(v)): neighbours of v inside and outside s."""
    inside = sum(1 for u in g.neighbors(v) if u in s)
    return inside, g.degree(v) - inside


def connected_components(g, restrict: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Blocks of g[restrict] (all of g when restrict is None), ordered by smallest member."""
    allowed = set(g.vertices()) if restrict is None else set(restrict)
    seen: set[int] = set()
    blocks = []
    for start in sorted(allowed):
        if start in seen:
            continue
        seen.add(start)
        stack, block = [start], [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
                    block.append(y)
        blocks.append(frozenset(block))
    return blocks


def is_connected(g, s: Iterable[int]) -> bool:
    s = set(s)
    return len(s) > 0 and len(connected_components(g, s)) == 1


def induced(g: Graph, keep: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``keep``; returns it with the new-id -> old-id list."""
    keep = list(keep)
    idx = {v: i for i, v in enumerate(keep)}
    edges = [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
    return Graph.from_edges(len(keep), edges), keep


# Small named families used across tests, fixtures and the CLI.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph.from_edges(rows * cols, edges)


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    """Labelled tree on len(seq)+2 vertices decoded from a Prüfer sequence."""
    n = len(seq) + 2
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    edges = []
    import heapq

    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def is_tree(g) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and len(connected_components(g)) == 1
