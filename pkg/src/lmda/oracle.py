"""Exhaustive ground truth on small instances.

The alliance oracle evaluates the definitions on every subset at once with
numpy: bit ``v`` of the array index says whether vertex v is in the subset.
Nothing here is clever; guards refuse inputs that would not finish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph, WeightedGraph
from .kernel import Kind, is_locally_minimal

MAX_ORACLE_N = 24
MAX_MATCHING_M = 24
MAX_ORIENTATION_M = 20
WITNESS_CAP = 64


class GuardError(ValueError):
    """Instance too large for exhaustive search."""


@dataclass
class OracleResult:
    best_size: int
    witnesses: list[frozenset[int]] = field(default_factory=list)
    optimal_count: int = 0


def _bit(v: int) -> np.uint32:
    return np.uint32(1 << v)


def _tables(g: Graph):
    n = g.n
    masks = np.arange(1 << n, dtype=np.uint32)
    pop = np.bitwise_count(masks).astype(np.int8)
    return masks, pop


def alliance_table(g: Graph, kind: Kind = Kind.ORDINARY) -> np.ndarray:
    """Boolean array over all subsets: is the subset a (non-empty) alliance."""
    if g.n > MAX_ORACLE_N:
        raise GuardError(f"oracle limited to n <= {MAX_ORACLE_N}, got {g.n}")
    masks, _ = _tables(g)
    bonus = 0 if Kind(kind) is Kind.STRONG else 1
    ok = masks != 0
    for v in range(g.n):
        has = (masks & _bit(v)) != 0
        inside = np.bitwise_count(masks & np.uint32(g.masks[v])).astype(np.int16)
        protected = 2 * inside - g.degree(v) + bonus >= 0
        ok &= ~has | protected
    return ok


def connected_table(g: Graph) -> np.ndarray:
    """Boolean array over all subsets: does the subset induce a connected graph."""
    masks, pop = _tables(g)
    conn = pop == 1
    for p in range(2, g.n + 1):
        idx = np.nonzero(pop == p)[0].astype(np.uint32)
        acc = np.zeros(idx.shape, dtype=bool)
        for v in range(g.n):
            bit = _bit(v)
            rest = idx ^ bit
            acc |= ((idx & bit) != 0) & ((rest & np.uint32(g.masks[v])) != 0) & conn[rest]
        conn[idx] = acc
    return conn


def lm_table(g: Graph, kind: Kind = Kind.ORDINARY, connected: bool = False) -> np.ndarray:
    """Boolean array over all subsets: locally minimal alliance (connected variant on request)."""
    good = alliance_table(g, kind)
    if connected:
        good &= connected_table(g)
    masks, _ = _tables(g)
    lm = good.copy()
    for v in range(g.n):
        bit = _bit(v)
        lm &= ((masks & bit) == 0) | ~good[masks ^ bit]
    return lm


def _lex_order(idx: np.ndarray, n: int) -> np.ndarray:
    """Order equal-size subsets by their sorted member tuples."""
    rev = np.zeros_like(idx)
    for v in range(n):
        rev |= ((idx >> np.uint32(v)) & np.uint32(1)) << np.uint32(n - 1 - v)
    return idx[np.argsort(-rev.astype(np.int64), kind="stable")]


def _members(mask: int) -> frozenset[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def max_lm_alliance(g: Graph, kind: Kind = Kind.ORDINARY, connected: bool = False) -> OracleResult:
    kind = Kind(kind)
    if g.n == 0:
        return OracleResult(0)
    lm = lm_table(g, kind, connected)
    idx = np.nonzero(lm)[0].astype(np.uint32)
    if idx.size == 0:
        return OracleResult(0)
    sizes = np.bitwise_count(idx)
    best = int(sizes.max())
    top = _lex_order(idx[sizes == best], g.n)
    witnesses = [_members(int(x)) for x in top[:WITNESS_CAP]]
    for w in witnesses:
        assert is_locally_minimal(g, w, kind, connected_variant=connected), w
    return OracleResult(best, witnesses, int(top.size))


def lm_sizes(g: Graph, kind: Kind = Kind.ORDINARY, connected: bool = False) -> dict[int, int]:
    """Number of locally minimal alliances of each size."""
    lm = lm_table(g, kind, connected)
    idx = np.nonzero(lm)[0].astype(np.uint32)
    sizes, counts = np.unique(np.bitwise_count(idx), return_counts=True)
    return {int(s): int(c) for s, c in zip(sizes, counts)}


def exists_exact(g: Graph, k: int, kind: Kind = Kind.ORDINARY, connected: bool = False) -> frozenset[int] | None:
    kind = Kind(kind)
    if g.n > MAX_ORACLE_N:
        raise GuardError(f"oracle limited to n <= {MAX_ORACLE_N}, got {g.n}")
    if k <= 0 or k > g.n:
        return None
    lm = lm_table(g, kind, connected)
    idx = np.nonzero(lm)[0].astype(np.uint32)
    idx = idx[np.bitwise_count(idx) == k]
    if idx.size == 0:
        return None
    w = _members(int(_lex_order(idx, g.n)[0]))
    assert is_locally_minimal(g, w, kind, connected_variant=connected)
    return w


def is_maximal_matching(g: Graph, matching) -> bool:
    covered: set[int] = set()
    for u, v in matching:
        if not g.has_edge(u, v) or u in covered or v in covered:
            return False
        covered.update((u, v))
    return all(u in covered or v in covered for u, v in g.edges())


def min_maximal_matching(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    """Smallest maximal matching, by increasing-size enumeration of edge subsets."""
    edges = g.edges()
    if len(edges) > MAX_MATCHING_M:
        raise GuardError(f"matching oracle limited to m <= {MAX_MATCHING_M}, got {len(edges)}")
    for size in range(len(edges) + 1):
        for sub in combinations(edges, size):
            if is_maximal_matching(g, sub):
                return size, list(sub)
    raise AssertionError("unreachable: the empty graph has the empty maximal matching")


def min_max_outdegree(wg: WeightedGraph) -> tuple[int, dict[tuple[int, int], tuple[int, int]]]:
    """Minimum over orientations of the largest weighted outdegree.

    Returns r* and one optimal orientation as ``edge -> (tail, head)``.  The
    smallest orientation index (bit e set = second endpoint pays) wins ties.
    """
    edges = wg.base.edges()
    m, n = len(edges), wg.base.n
    if m > MAX_ORIENTATION_M:
        raise GuardError(f"orientation oracle limited to m <= {MAX_ORIENTATION_M}, got {m}")
    if m == 0:
        return 0, {}
    codes = np.arange(1 << m, dtype=np.uint32)
    out = np.zeros((n, codes.size), dtype=np.int32)
    for e, (u, v) in enumerate(edges):
        flip = ((codes >> np.uint32(e)) & np.uint32(1)).astype(bool)
        w = wg.w(u, v)
        out[u] += np.where(flip, 0, w)
        out[v] += np.where(flip, w, 0)
    worst = out.max(axis=0)
    best = int(worst.min())
    code = int(np.argmax(worst == best))
    orientation = {}
    for e, (u, v) in enumerate(edges):
        orientation[(u, v)] = (v, u) if (code >> e) & 1 else (u, v)
    return best, orientation


def outdegrees(wg: WeightedGraph, orientation) -> list[int]:
    out = [0] * wg.base.n
    for (u, v), (tail, _head) in orientation.items():
        out[tail] += wg.w(u, v)
    return out


def coloring_hit_fraction(g: Graph, k: int) -> float:
    """Share of the 2^n green/red colourings in which some connected locally
    minimal alliance of size k is entirely green with an entirely red boundary."""
    if g.n > 16:
        raise GuardError(f"colouring enumeration limited to n <= 16, got {g.n}")
    lm = lm_table(g, Kind.ORDINARY, connected=True)
    idx = np.nonzero(lm)[0]
    idx = idx[np.bitwise_count(idx.astype(np.uint32)) == k]
    colorings = np.arange(1 << g.n, dtype=np.uint32)
    hit = np.zeros(colorings.shape, dtype=bool)
    for s in idx:
        s = int(s)
        boundary = 0
        for v in range(g.n):
            if s >> v & 1:
                boundary |= g.masks[v]
        boundary &= ~s
        hit |= ((colorings & np.uint32(s)) == s) & ((colorings & np.uint32(boundary)) == 0)
    return float(hit.mean())
