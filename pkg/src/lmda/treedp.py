"""Largest connected locally minimal strong defensive alliance on a tree.

Seven states per vertex; every table value is the best alliance size inside
the subtree of v given v's state, ``NEG`` when the state is impossible.

A vertex in the solution is *good* when it has a marginally protected child
in the solution.  ``_P`` states have the parent inside the solution, ``_PBAR``
states have it outside.  The recurrences pick children greedily from three
different descending orderings, one per case.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import Graph, is_tree

NEG = float("-inf")


class TreeState(enum.Enum):
    ZERO = "0"
    M_P_G = "m^p_g"
    M_P_B = "m^p_b"
    M_PBAR_G = "m^pbar_g"
    O_P_G = "o^p_g"
    O_P_B = "o^p_b"
    O_PBAR_G = "o^pbar_g"

    @property
    def marginal(self) -> bool:
        return self in (TreeState.M_P_G, TreeState.M_P_B, TreeState.M_PBAR_G)

    @property
    def parent_in(self) -> bool:
        return self in (TreeState.M_P_G, TreeState.M_P_B, TreeState.O_P_G, TreeState.O_P_B)

    @property
    def good(self) -> bool:
        return self in (TreeState.M_P_G, TreeState.M_PBAR_G, TreeState.O_P_G, TreeState.O_PBAR_G)


S = TreeState
ROOT_STATES = (S.ZERO, S.M_PBAR_G, S.O_PBAR_G)
# solutions through the root win ties
_ROOT_PREFERENCE = (S.M_PBAR_G, S.O_PBAR_G, S.ZERO)


def sat_add(*values):
    """Sum where NEG absorbs everything."""
    total = 0
    for x in values:
        if x == NEG:
            return NEG
        total += x
    return total


def _ceil_half(x: int) -> int:
    return -(-x // 2)


@dataclass
class TreeTable:
    root: int
    children: list[list[int]]
    values: list[dict[TreeState, float]] = field(default_factory=list)
    # (vertex, state) -> [(child, child_state), ...] chosen for that entry
    choice: list[dict[TreeState, list[tuple[int, TreeState]]]] = field(default_factory=list)

    def value(self, v: int, state: TreeState):
        return self.values[v][state]

    def reconstruct(self, v: int, state: TreeState) -> frozenset[int]:
        """Vertices of the subtree of v realising ``values[v][state]``."""
        if self.values[v][state] == NEG:
            raise ValueError(f"state {state.value} of vertex {v} is infeasible")
        out = []
        stack = [(v, state)]
        while stack:
            x, st = stack.pop()
            if st is not S.ZERO:
                out.append(x)
            stack.extend(self.choice[x][st])
        return frozenset(out)


def _key(vals, states):
    return max(vals[s] for s in states)


def _arg(vals, states):
    best = max(states, key=lambda s: vals[s])
    return best


class _Ordering:
    """Children sorted by a key, descending, ties to the smaller id."""

    def __init__(self, kids, key):
        self.order = sorted(kids, key=lambda c: (-key(c), c))
        self.keys = [key(c) for c in self.order]
        self.pos = {c: i for i, c in enumerate(self.order)}
        self.prefix = [0]
        for k in self.keys:
            self.prefix.append(self.prefix[-1] + (k if k != NEG else 0))
        self.pos_prefix = [0]
        for k in self.keys:
            self.pos_prefix.append(self.pos_prefix[-1] + max(0, k))

    def top_excluding(self, count: int, skip: int | None):
        """(sum, members) of the first ``count`` children, ``skip`` left out."""
        if count < 0:
            return NEG, []
        if count == 0:
            return 0, []
        p = self.pos[skip] if skip is not None else len(self.order)
        hi = count + 1 if p < count else count
        if hi > len(self.order):
            return NEG, []
        # sorted descending, so the last taken key decides finiteness
        if self.keys[hi - 1] == NEG:
            return NEG, []
        total = self.prefix[hi]
        members = self.order[:hi]
        if p < hi:
            total -= self.keys[p]
            members = members[:p] + members[p + 1:]
        return total, members

    def positive_total(self) -> int:
        return self.pos_prefix[-1]

    def positive_members(self, excluded: set[int]) -> list[int]:
        return [c for c, k in zip(self.order, self.keys) if c not in excluded and k > 0]


def _rooted(g: Graph, root: int) -> tuple[list[list[int]], list[int]]:
    children: list[list[int]] = [[] for _ in range(g.n)]
    order = [root]
    seen = [False] * g.n
    seen[root] = True
    for x in order:
        for y in g.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                children[x].append(y)
                order.append(y)
    return children, order


def _compute_vertex(v, kids, d, vals_of):
    """All seven entries for v given ``d`` (children count, minus 1 at the root)."""
    vals = {s: NEG for s in S}
    choice: dict[TreeState, list] = {s: [] for s in S}
    half = _ceil_half(d + 1)

    # Case 1: v outside; keep the best solution hanging below one child.
    vals[S.ZERO] = 0
    for c in kids:
        cv = vals_of(c)
        for st in ROOT_STATES:
            if cv[st] > vals[S.ZERO]:
                vals[S.ZERO] = cv[st]
                choice[S.ZERO] = [(c, st)]

    any_state = (S.M_P_G, S.M_P_B, S.O_P_G, S.O_P_B)
    marg_child = (S.M_P_G, S.M_P_B)
    good_child = (S.M_P_G, S.O_P_G)
    over_child = (S.O_P_G, S.O_P_B)

    # Case 2: v marginal and good; one marginal child plus an exact count of others.
    ord2 = _Ordering(kids, lambda c: _key(vals_of(c), any_state))
    for state, need in ((S.M_P_G, half - 2), (S.M_PBAR_G, half - 1)):
        if need < 0:
            continue
        best, pick = NEG, None
        for c in kids:
            first = _key(vals_of(c), marg_child)
            if first == NEG:
                continue
            rest, members = ord2.top_excluding(need, c)
            total = sat_add(first, rest)
            if total > best:
                best = total
                pick = [(c, _arg(vals_of(c), marg_child))]
                pick += [(x, _arg(vals_of(x), any_state)) for x in members]
        if pick is not None:
            vals[state] = 1 + best
            choice[state] = pick

    # Case 3: v overprotected and good; all chosen children must be good.
    ord3 = _Ordering(kids, lambda c: _key(vals_of(c), good_child))
    for state, need in ((S.O_P_G, half - 1), (S.O_PBAR_G, half)):
        best, pick = NEG, None
        for c in kids:
            first = vals_of(c)[S.M_P_G]
            if first == NEG:
                continue
            rest, members = ord3.top_excluding(need, c)
            if rest == NEG:
                continue
            taken = [c] + members
            extra = ord3.positive_total() - sum(max(0, ord3.keys[ord3.pos[x]]) for x in taken)
            total = first + rest + extra
            if total > best:
                best, pick = total, taken
        if pick is not None:
            extras = ord3.positive_members(set(pick))
            pick = [(pick[0], S.M_P_G)] + [(x, _arg(vals_of(x), good_child)) for x in pick[1:] + extras]
            vals[state] = 1 + best
            choice[state] = pick

    # Case 4: v overprotected and bad; children in the solution are o^p_g.
    ord4 = _Ordering(kids, lambda c: vals_of(c)[S.O_P_G])
    rest, members = ord4.top_excluding(half, None)
    if rest != NEG:
        extras = ord4.positive_members(set(members))
        extra = ord4.positive_total() - sum(max(0, ord4.keys[ord4.pos[x]]) for x in members)
        vals[S.O_P_B] = 1 + rest + extra
        choice[S.O_P_B] = [(x, S.O_P_G) for x in members + extras]

    # Case 5: v marginal and bad; an exact count of overprotected children.
    ord5 = _Ordering(kids, lambda c: _key(vals_of(c), over_child))
    rest, members = ord5.top_excluding(half - 1, None)
    if rest != NEG:
        vals[S.M_P_B] = 1 + rest
        choice[S.M_P_B] = [(x, _arg(vals_of(x), over_child)) for x in members]
    return vals, choice


def build_table(t: Graph, root: int = 0) -> TreeTable:
    if not is_tree(t):
        raise ValueError("input graph is not a tree")
    if not 0 <= root < t.n:
        raise ValueError(f"root {root} out of range")
    children, order = _rooted(t, root)
    table = TreeTable(root, children, [None] * t.n, [None] * t.n)

    def vals_of(c):
        return table.values[c]

    for v in reversed(order):
        kids = children[v]
        d = len(kids) - 1 if v == root else len(kids)
        if v == root and not kids:
            d = 0
        vals, choice = _compute_vertex(v, kids, d, vals_of)
        if v == root:
            for st in S:
                if st.parent_in:
                    vals[st], choice[st] = NEG, []
        table.values[v] = vals
        table.choice[v] = choice
    return table


def solve_tree(t: Graph, root: int = 0) -> tuple[int, frozenset[int]]:
    """Size and one witness of a largest connected locally minimal strong alliance."""
    table = build_table(t, root)
    if t.n == 1:
        # a lone vertex is a strong alliance and trivially locally minimal
        return 1, frozenset({0})
    vals = table.values[root]
    best = max(_ROOT_PREFERENCE, key=lambda st: (vals[st], -_ROOT_PREFERENCE.index(st)))
    size = vals[best]
    if size == NEG or size <= 0:
        return 0, frozenset()
    return int(size), table.reconstruct(root, best)
