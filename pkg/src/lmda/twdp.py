"""Maximum locally minimal defensive alliance over a nice tree decomposition.

A record at node t summarises a partial solution A_t of the vertices below t:

* ``A``: members inside the bag, a bitmask over bag positions;
* ``x``: for each bag member, its number of neighbours in A_t;
* ``a``: |A_t|;
* ``alpha``: members of A_t that are protected, 2 d_{A_t}(v) >= d(v) - 1;
* ``y``: per bag position 0 (not in A), BAD or GOOD, where good means a
  marginally protected neighbour among the forgotten members;
* ``z``: for every nonempty subset S of bag positions, the number of
  forgotten bad members adjacent to all of S;
* ``beta``: number of good members of A_t.

At the root the bag is empty and a record with a = alpha = beta describes an
alliance in which every member has a marginally protected neighbour.
"""
from __future__ import annotations

from dataclasses import dataclass

from .decomposition import NiceDecomposition, decompose, make_nice, nice_decomposition_errors
from .graph import Graph
from .kernel import Kind, is_locally_minimal

BAD, GOOD = 1, 2


@dataclass(frozen=True)
class TwRecord:
    A: int
    x: tuple[int, ...]
    a: int
    alpha: int
    y: tuple[int, ...]
    z: tuple[int, ...]
    beta: int


def _insert_bit(mask: int, p: int) -> int:
    low = mask & ((1 << p) - 1)
    return low | ((mask >> p) << (p + 1))


def _remove_bit(mask: int, p: int) -> int:
    low = mask & ((1 << p) - 1)
    return low | ((mask >> (p + 1)) << p)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _Solver:
    def __init__(self, g: Graph, nd: NiceDecomposition, prune: bool):
        self.g = g
        self.nd = nd
        self.prune = prune
        self.deg = [g.degree(v) for v in range(g.n)]
        self.tables: list[dict[TwRecord, tuple] | None] = [None] * len(nd.nodes)
        self.records_peak = 0

    def protected(self, xv: int, v: int) -> bool:
        return 2 * xv >= self.deg[v] - 1

    def marginal(self, xv: int, v: int) -> bool:
        slack = 2 * xv - self.deg[v] + 1
        return xv >= 1 and 0 <= slack <= 1

    def _put(self, table, rec, prov):
        # first writer wins, so every record keeps one provenance link
        if rec not in table:
            table[rec] = prov

    def run(self):
        for i, node in enumerate(self.nd.nodes):
            step = getattr(self, "_" + node.kind)
            table: dict[TwRecord, tuple] = {}
            step(node, table)
            self.tables[i] = table
            self.records_peak = max(self.records_peak, len(table))
            # child tables are no longer needed once the parent is built,
            # but reconstruction walks them, so they are kept
        return self.tables[self.nd.root]

    def _leaf(self, node, table):
        self._put(table, TwRecord(0, (), 0, 0, (), (), 0), ())

    def _introduce(self, node, table):
        child = self.nd.nodes[node.children[0]]
        v = node.vertex
        p = node.bag.index(v)
        k = len(node.bag)
        remap = [0] * (1 << len(child.bag))
        for s in range(1, len(remap)):
            remap[s] = _insert_bit(s, p)
        nbr_pos = [j for j, u in enumerate(node.bag) if u != v and self.g.has_edge(u, v)]
        for rec in self.tables[node.children[0]]:
            A = _insert_bit(rec.A, p)
            x = rec.x[:p] + (0,) + rec.x[p:]
            y = rec.y[:p] + (0,) + rec.y[p:]
            z = [0] * ((1 << k) - 1)
            for s in range(1, len(remap)):
                z[remap[s] - 1] = rec.z[s - 1]
            z = tuple(z)
            # Case (i): v stays out
            self._put(table, TwRecord(A, x, rec.a, rec.alpha, y, z, rec.beta), (rec,))
            # Case (ii): v joins; its z entries are already zero
            A2 = A | (1 << p)
            x2 = list(x)
            delta = 0
            inside = 0
            for j in nbr_pos:
                if A2 >> j & 1:
                    inside += 1
                    u = node.bag[j]
                    x2[j] += 1
                    if not self.protected(x[j], u) and self.protected(x2[j], u):
                        delta += 1
            x2[p] = inside
            # the new vertex counts as previously unprotected
            if self.protected(inside, v):
                delta += 1
            y2 = y[:p] + (BAD,) + y[p + 1:]
            self._put(
                table,
                TwRecord(A2, tuple(x2), rec.a + 1, rec.alpha + delta, y2, z, rec.beta),
                (rec,),
            )

    def _forget(self, node, table):
        child = self.nd.nodes[node.children[0]]
        v = node.vertex
        p = child.bag.index(v)
        k = len(node.bag)
        vbit = 1 << p
        # old (child) mask of every new subset
        unmap = [0] * (1 << k)
        for s in range(1, 1 << k):
            unmap[s] = _insert_bit(s, p)
        nbr_new = 0
        for j, u in enumerate(node.bag):
            if self.g.has_edge(u, v):
                nbr_new |= 1 << j
        for rec in self.tables[node.children[0]]:
            x = rec.x[:p] + rec.x[p + 1:]
            if not rec.A & vbit:
                A = _remove_bit(rec.A, p)
                y = rec.y[:p] + rec.y[p + 1:]
                z = tuple(rec.z[unmap[s] - 1] for s in range(1, 1 << k))
                self._put(table, TwRecord(A, x, rec.a, rec.alpha, y, z, rec.beta), (rec,))
                continue
            A = _remove_bit(rec.A, p)
            n_a = nbr_new & A
            marg = self.marginal(rec.x[p], v)
            good = rec.y[p] == GOOD
            y = list(rec.y[:p] + rec.y[p + 1:])
            beta = rec.beta
            z = []
            for s in range(1, 1 << k):
                old = rec.z[unmap[s] - 1]
                if marg:
                    old -= rec.z[(unmap[s] | vbit) - 1]
                if not good and s & ~n_a == 0:
                    old += 1
                z.append(old)
            if marg:
                turned = 0
                for j in _bits(n_a):
                    if y[j] == BAD:
                        turned += 1
                    y[j] = GOOD
                beta += rec.z[vbit - 1] + turned
            out = TwRecord(A, x, rec.a, rec.alpha, tuple(y), tuple(z), beta)
            if self.prune and self._dead(node.bag, out):
                continue
            self._put(table, out, (rec,))

    def _dead(self, bag, rec: TwRecord) -> bool:
        """A forgotten member is unprotected, so alpha can never reach a."""
        bag_protected = sum(1 for j in _bits(rec.A) if self.protected(rec.x[j], bag[j]))
        bag_members = bin(rec.A).count("1")
        return rec.alpha - bag_protected < rec.a - bag_members

    def _join(self, node, table):
        left = self.tables[node.children[0]]
        right = self.tables[node.children[1]]
        by_a: dict[int, list[TwRecord]] = {}
        for rec in right:
            by_a.setdefault(rec.A, []).append(rec)
        bag = node.bag
        # d_A(v) for every bag position, per A
        inner_deg: dict[int, list[int]] = {}
        for r1 in left:
            partners = by_a.get(r1.A)
            if not partners:
                continue
            A = r1.A
            if A not in inner_deg:
                inner_deg[A] = [
                    sum(1 for i in _bits(A) if self.g.has_edge(bag[i], bag[j])) for j in range(len(bag))
                ]
            dA = inner_deg[A]
            members = list(_bits(A))
            size = len(members)
            for r2 in partners:
                x = list(r1.x)
                gamma = delta = both_good = 0
                for j in members:
                    u = bag[j]
                    x[j] = r1.x[j] + r2.x[j] - dA[j]
                    p1, p2 = self.protected(r1.x[j], u), self.protected(r2.x[j], u)
                    if p1 and p2:
                        gamma += 1
                    elif not p1 and not p2 and self.protected(x[j], u):
                        delta += 1
                    if r1.y[j] == GOOD and r2.y[j] == GOOD:
                        both_good += 1
                y = tuple(
                    0 if not A >> j & 1 else (GOOD if GOOD in (r1.y[j], r2.y[j]) else BAD)
                    for j in range(len(bag))
                )
                z = tuple(a + b for a, b in zip(r1.z, r2.z))
                rec = TwRecord(
                    A, tuple(x), r1.a + r2.a - size,
                    r1.alpha + r2.alpha - gamma + delta, y, z,
                    r1.beta + r2.beta - both_good,
                )
                self._put(table, rec, (r1, r2))

    def witness(self, rec: TwRecord) -> frozenset[int]:
        out = set()
        stack = [(self.nd.root, rec)]
        while stack:
            t, r = stack.pop()
            node = self.nd.nodes[t]
            out.update(node.bag[j] for j in _bits(r.A))
            prov = self.tables[t][r]
            stack.extend(zip(node.children, prov))
        return frozenset(out)


@dataclass
class TwResult:
    size: int
    witness: frozenset[int]
    width_used: int
    records_peak: int


def run_tables(g: Graph, nd: NiceDecomposition, prune: bool = False) -> list[dict]:
    """Every node's table (records to provenance), for inspection."""
    solver = _Solver(g, nd, prune)
    solver.run()
    return solver.tables


def dp_solve(g: Graph, nd: NiceDecomposition | None = None, prune: bool = True) -> TwResult:
    if nd is None:
        nd = make_nice(decompose(g))
    errors = nice_decomposition_errors(g, nd)
    if errors:
        raise ValueError("decomposition does not fit the graph: " + "; ".join(errors))
    solver = _Solver(g, nd, prune)
    root = solver.run()
    best = None
    for rec in root:
        if rec.a == rec.alpha == rec.beta and rec.a > 0:
            if best is None or rec.a > best.a:
                best = rec
    size, witness = 0, frozenset()
    if best is not None:
        size, witness = best.a, solver.witness(best)
        assert len(witness) == size
        assert is_locally_minimal(g, witness, Kind.ORDINARY), sorted(witness)
    # a lone vertex of degree at most one has no marginal neighbour, so the
    # table cannot represent it, yet it is a locally minimal alliance
    if size < 1:
        for v in range(g.n):
            if g.degree(v) <= 1:
                size, witness = 1, frozenset({v})
                break
    return TwResult(size, witness, nd.width, solver.records_peak)
