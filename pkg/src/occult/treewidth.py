"""Exact treewidth for small graphs, lower bounds, and tree decompositions.

The solver decides "tw <= k" for k = lower bound, lower bound + 1, ... by a
depth-first search over elimination orderings.  States are sets of eliminated
vertices (the elimination graph depends only on that set), failed states are
memoised, and simplicial vertices of degree <= k are eliminated eagerly,
which is safe.  Vertices are tried in increasing id order, so the reported
ordering and decomposition are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .asterism import Violation
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...]  # tree edges between bag indices

    @property
    def width(self) -> int:
        return max(0, max((len(b) for b in self.bags), default=0) - 1)

    def to_dict(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "edges": [list(e) for e in self.edges],
                "width": self.width}

    @classmethod
    def from_dict(cls, data) -> "TreeDecomposition":
        return cls(tuple(frozenset(int(v) for v in b) for b in data["bags"]),
                   tuple((int(a), int(b)) for a, b in data["edges"]))

    def to_pace(self, n_vertices: int) -> str:
        """PACE 2017 .td text; bags and vertices are 1-based in the file."""
        maxbag = max((len(b) for b in self.bags), default=0)
        lines = [f"s td {len(self.bags)} {maxbag} {n_vertices}"]
        for i, b in enumerate(self.bags):
            lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(b)]))
        for a, b in sorted(tuple(sorted(e)) for e in self.edges):
            lines.append(f"{a + 1} {b + 1}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_pace(cls, text: str) -> tuple["TreeDecomposition", int]:
        bags: dict[int, frozenset] = {}
        edges = []
        header = None
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "s":
                if len(parts) != 5 or parts[1] != "td":
                    raise ValueError(f"bad solution line: {raw!r}")
                header = tuple(int(p) for p in parts[2:])
            elif parts[0] == "b":
                bags[int(parts[1]) - 1] = frozenset(int(v) - 1 for v in parts[2:])
            else:
                a, b = (int(p) - 1 for p in parts)
                edges.append((a, b))
        if header is None:
            raise ValueError("missing 's td' line")
        nb, _, nv = header
        if sorted(bags) != list(range(nb)):
            raise ValueError("bag ids must be 1..N exactly once")
        return cls(tuple(bags[i] for i in range(nb)), tuple(edges)), nv


def verify_decomposition(g: Graph, td: TreeDecomposition) -> int | Violation:
    """Width of td if it is a tree decomposition of g, else the first failure
    among: tree, unknown-vertex, vertex-cover, edge-cover, connectivity."""
    nb = len(td.bags)
    adj: dict[int, set[int]] = {i: set() for i in range(nb)}
    for a, b in td.edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b or b in adj[a]:
            return Violation("tree", f"bad tree edge {a}-{b}")
        adj[a].add(b)
        adj[b].add(a)
    if nb == 0 or len(td.edges) != nb - 1 or not _connected(adj, set(range(nb))):
        return Violation("tree", "bags do not form a tree")
    where: dict[int, set[int]] = {v: set() for v in g.vertices}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in where:
                return Violation("unknown-vertex", f"bag {i} holds unknown vertex {v}")
            where[v].add(i)
    for v, nodes in where.items():
        if not nodes:
            return Violation("vertex-cover", f"vertex {v} is in no bag")
    for u, v in g.edges:
        if not (where[u] & where[v]):
            return Violation("edge-cover", f"edge {u}-{v} is in no bag")
    for v, nodes in where.items():
        if not _connected(adj, nodes):
            return Violation("connectivity", f"bags holding {v} are not connected")
    return td.width


def _connected(adj: dict[int, set[int]], nodes: set[int]) -> bool:
    if not nodes:
        return True
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


# lower bounds

def _degeneracy(adj: dict[int, set[int]]) -> int:
    adj = {v: set(n) for v, n in adj.items()}
    best = 0
    while adj:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        for w in adj[v]:
            adj[w].discard(v)
        del adj[v]
    return best


def _minor_min_width(adj: dict[int, set[int]]) -> int:
    """Contract a min-degree vertex into its min-degree neighbor, repeatedly."""
    adj = {v: set(n) for v, n in adj.items()}
    best = 0
    while len(adj) > 1:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        if not adj[v]:
            del adj[v]
            continue
        u = min(adj[v], key=lambda w: (len(adj[w]), w))
        for w in adj[v]:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        del adj[v]
    return best


def treewidth_lower_bound(g: Graph) -> int:
    """max(degeneracy, minor-min-width); both are minor-monotone-sound."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    return max(_degeneracy(adj), _minor_min_width(adj), 0)


# upper bound

def _min_fill_order(g: Graph) -> list[int]:
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    while adj:
        def fill(v):
            nb = list(adj[v])
            return sum(1 for i in range(len(nb)) for j in range(i + 1, len(nb)) if nb[j] not in adj[nb[i]])
        v = min(adj, key=lambda u: (fill(u), len(adj[u]), u))
        order.append(v)
        nb = adj.pop(v)
        for w in nb:
            adj[w].discard(v)
            adj[w] |= nb - {w}
    return order


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Bag of v = {v} + its neighbors when eliminated; parent = the bag of the
    earliest-eliminated vertex among those neighbors.  Roots are chained."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    rank = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags, parent = [], []
    for v in order:
        nb = adj.pop(v)
        for w in nb:
            adj[w].discard(v)
            adj[w] |= nb - {w}
        bags.append(frozenset(nb | {v}))
        parent.append(rank[min(nb, key=rank.__getitem__)] if nb else None)
    edges = []
    roots = []
    for i, p in enumerate(parent):
        if p is None:
            roots.append(i)
        else:
            edges.append((min(i, p), max(i, p)))
    edges += [(min(a, b), max(a, b)) for a, b in zip(roots, roots[1:])]
    return TreeDecomposition(tuple(bags), tuple(sorted(edges)))


# exact solver

@dataclass(frozen=True)
class TreewidthResult:
    value: int | None  # None when indeterminate
    lower: int
    upper: int
    decomposition: TreeDecomposition
    order: tuple[int, ...]
    nodes: int

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {"status": "exact" if self.exact else "Indeterminate", "treewidth": self.value,
                "lower": self.lower, "upper": self.upper, "nodes": self.nodes,
                "order": list(self.order), "decomposition": self.decomposition.to_dict()}


class _NodeLimit(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _decide(adj0: list[int], n: int, k: int, counter: list[int], limit: int) -> list[int] | None:
    """An elimination order of width <= k, or None."""
    failed: set[int] = set()
    order: list[int] = []

    def eliminate(adj, v):
        nb = adj[v]
        new = list(adj)
        m = nb
        while m:
            low = m & -m
            w = low.bit_length() - 1
            new[w] = (new[w] | nb) & ~low & ~(1 << v)
            m ^= low
        new[v] = 0
        return new

    def rec(adj, alive) -> bool:
        if _popcount(alive) <= k + 1:
            return True
        if alive in failed:
            return False
        counter[0] += 1
        if counter[0] > limit:
            raise _NodeLimit
        verts = [v for v in range(n) if alive >> v & 1]
        degs = {v: _popcount(adj[v]) for v in verts}
        if min(degs.values()) > k:
            failed.add(alive)
            return False
        for v in verts:
            if degs[v] <= k and _is_clique(adj, adj[v]):
                order.append(v)
                if rec(eliminate(adj, v), alive & ~(1 << v)):
                    return True
                order.pop()
                failed.add(alive)
                return False
        for v in verts:
            if degs[v] <= k:
                order.append(v)
                if rec(eliminate(adj, v), alive & ~(1 << v)):
                    return True
                order.pop()
        failed.add(alive)
        return False

    alive = (1 << n) - 1
    if rec(list(adj0), alive):
        left = set(range(n)) - set(order)
        return order + sorted(left)
    return None


def _is_clique(adj: list[int], mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        w = low.bit_length() - 1
        if (mask & ~low) & ~adj[w]:
            return False
        m ^= low
    return True


def exact_treewidth(g: Graph, node_limit: int = 2_000_000) -> TreewidthResult:
    """Exact treewidth with an optimal decomposition, or an Indeterminate
    result (value None) carrying the best bounds when node_limit runs out."""
    verts = list(g.vertices)
    if not verts:
        td = TreeDecomposition((frozenset(),), ())
        return TreewidthResult(0, 0, 0, td, (), 0)
    idx = {v: i for i, v in enumerate(verts)}
    adj0 = [0] * len(verts)
    for u, v in g.edges:
        adj0[idx[u]] |= 1 << idx[v]
        adj0[idx[v]] |= 1 << idx[u]
    lower = treewidth_lower_bound(g)
    heur = _min_fill_order(g)
    heur_td = decomposition_from_order(g, heur)
    upper = heur_td.width
    counter = [0]
    k = lower
    try:
        while k < upper:
            found = _decide(adj0, len(verts), k, counter, node_limit)
            if found is not None:
                order = [verts[i] for i in found]
                td = decomposition_from_order(g, order)
                return TreewidthResult(td.width, k, k, td, tuple(order), counter[0])
            k += 1
    except _NodeLimit:
        return TreewidthResult(None, k, upper, heur_td, tuple(heur), counter[0])
    return TreewidthResult(upper, upper, upper, heur_td, tuple(heur), counter[0])
