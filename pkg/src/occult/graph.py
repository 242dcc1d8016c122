"""Simple undirected graphs: construction, induced subgraphs, paths, cycles.

Vertex ids are plain integers.  Every iteration order exposed here is sorted,
so witnesses produced downstream are reproducible byte for byte.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Path = tuple[int, ...]
Cycle = tuple[int, ...]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class BudgetExceeded:
    """Returned (never raised) when an enumeration outgrows its budget."""

    budget: int
    found: int


class Graph:
    __slots__ = ("_adj", "_vertices", "_edges")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge {u}-{v} has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._edges = tuple(sorted((u, v) for u in self._vertices for v in self._adj[u] if u < v))

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> "Graph":
        return cls(adj, ((u, v) for u, nbrs in adj.items() for v in nbrs if u < v))

    # basic access

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def _require(self, xs: Iterable[int]) -> frozenset[int]:
        xs = frozenset(xs)
        missing = xs - self._adj.keys()
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)}")
        return xs

    # set-level predicates

    def induced_subgraph(self, xs: Iterable[int]) -> "Graph":
        keep = self._require(xs)
        return Graph(keep, ((u, v) for u, v in self._edges if u in keep and v in keep))

    def neighbors_of_set(self, xs: Iterable[int]) -> frozenset[int]:
        """N(X): vertices outside X with a neighbor in X."""
        xs = frozenset(xs)
        out: set[int] = set()
        for x in xs:
            out |= self._adj[x]
        return frozenset(out - xs)

    def is_anticomplete(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        xs, ys = self._require(xs), self._require(ys)
        if xs & ys:
            raise GraphError("anticompleteness is defined for disjoint sets")
        return all(not (self._adj[x] & ys) for x in xs)

    def is_stable(self, xs: Iterable[int]) -> bool:
        xs = self._require(xs)
        return all(not (self._adj[x] & xs) for x in xs)

    def is_clique(self, xs: Iterable[int]) -> bool:
        xs = self._require(xs)
        return all(xs - {x} <= self._adj[x] for x in xs)

    def components(self, xs: Iterable[int] | None = None) -> list[list[int]]:
        keep = frozenset(self._vertices) if xs is None else self._require(xs)
        seen: set[int] = set()
        comps = []
        for s in sorted(keep):
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._adj[u]:
                    if w in keep and w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def distances_from(self, source: int, limit: int | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    # serialization

    def is_compact(self) -> bool:
        return self._vertices == tuple(range(self.n))

    def relabeled(self) -> tuple["Graph", dict[int, int]]:
        """Copy on ids 0..n-1 (sorted order) plus the old -> new map."""
        index = {v: i for i, v in enumerate(self._vertices)}
        return Graph(range(self.n), ((index[u], index[v]) for u, v in self._edges)), index

    def to_dict(self) -> dict:
        if not self.is_compact():
            raise GraphError("graph JSON needs vertices 0..n-1; call relabeled() first")
        return {"n": self.n, "edges": [list(e) for e in self._edges]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Graph":
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        if n < 0:
            raise GraphError("negative vertex count")
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"parallel edge {key}")
            seen.add(key)
        return cls(range(n), edges)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in self._vertices]
        lines += [f"  {u} -- {v};" for u, v in self._edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def dumps(data) -> str:
    """The one JSON encoding used for every artifact file."""
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def path_graph(n: int, start: int = 0) -> Graph:
    vs = range(start, start + n)
    return Graph(vs, ((v, v + 1) for v in vs[:-1]))


def cycle_graph(n: int, start: int = 0) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    vs = list(range(start, start + n))
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Union on ids shifted so the parts do not collide (parts taken in order)."""
    vertices, edges, offset = [], [], 0
    for g in graphs:
        h, index = g.relabeled()
        vertices += [v + offset for v in h.vertices]
        edges += [(u + offset, v + offset) for u, v in h.edges]
        offset += h.n
    return Graph(vertices, edges)


# path / cycle witnesses

def is_induced_path(g: Graph, seq: Iterable[int]) -> bool:
    """p_i ~ p_j iff |i - j| = 1, all distinct."""
    seq = tuple(seq)
    if not seq or len(set(seq)) != len(seq) or any(v not in g for v in seq):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for i, v in enumerate(seq):
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and abs(i - j) != 1:
                return False
        if i + 1 < len(seq) and not g.has_edge(v, seq[i + 1]):
            return False
    return True


def is_induced_cycle(g: Graph, seq: Iterable[int]) -> bool:
    """c_i ~ c_j iff |i - j| in {1, k-1}, k >= 3, all distinct."""
    seq = tuple(seq)
    k = len(seq)
    if k < 3 or len(set(seq)) != k or any(v not in g for v in seq):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for i, v in enumerate(seq):
        if not g.has_edge(v, seq[(i + 1) % k]):
            return False
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and (i - j) % k not in (1, k - 1):
                return False
    return True


def canonical_cycle(seq: Iterable[int]) -> Cycle:
    """Lexicographically least rotation/reflection of a cyclic sequence."""
    seq = list(seq)
    k = len(seq)
    i = seq.index(min(seq))
    fwd = tuple(seq[(i + j) % k] for j in range(k))
    bwd = tuple(seq[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


# transformations

def line_graph(g: Graph) -> Graph:
    """Vertex i of the result is g.edges[i]; adjacent iff the edges share an end."""
    by_vertex: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, (u, v) in enumerate(g.edges):
        by_vertex[u].append(i)
        by_vertex[v].append(i)
    edges = set()
    for incident in by_vertex.values():
        for a in range(len(incident)):
            for b in range(a + 1, len(incident)):
                edges.add((incident[a], incident[b]))
    return Graph(range(g.m), edges)


def subdivide(g: Graph, lengths: int | Mapping[tuple[int, int], int]) -> tuple[Graph, dict[int, int]]:
    """Replace every edge uv by a fresh u-v path with ``lengths[uv]`` edges.

    Original vertices are renumbered 0..n-1 in sorted order; new interior
    vertices follow in edge order.  Returns the graph and the map from
    original ids to new ids.
    """
    index = {v: i for i, v in enumerate(g.vertices)}
    nxt = g.n
    edges = []
    for u, v in g.edges:
        k = lengths if isinstance(lengths, int) else _edge_length(lengths, u, v)
        if k < 1:
            raise GraphError(f"edge {u}-{v}: subdivision length must be >= 1, got {k}")
        chain = [index[u]] + list(range(nxt, nxt + k - 1)) + [index[v]]
        nxt += k - 1
        edges += zip(chain, chain[1:])
    return Graph(range(nxt), edges), index


def _edge_length(lengths: Mapping[tuple[int, int], int], u: int, v: int) -> int:
    if (u, v) in lengths:
        return int(lengths[(u, v)])
    if (v, u) in lengths:
        return int(lengths[(v, u)])
    raise GraphError(f"no subdivision length for edge {u}-{v}")


def subdivision_violation(h: Graph, g: Graph, branch: Mapping[int, int], r: int) -> str | None:
    """Why h is not a (<= r)-subdivision of g with ``branch`` mapping g's
    vertices to h's, or None if it is.

    Every other vertex of h must have degree 2, and the paths they form
    between branch vertices must match g's edges one to one, each with
    length (edge count) at most r + 1.
    """
    if sorted(branch) != list(g.vertices):
        return "branch map must cover exactly the vertices of g"
    image = set(branch.values())
    if len(image) != g.n or not image <= set(h.vertices):
        return "branch map is not an injection into h"
    back = {b: v for v, b in branch.items()}
    found: dict[tuple[int, int], int] = {}
    seen: set[int] = set()
    for b in sorted(image):
        for w in sorted(h.neighbors(b)):
            prev, cur, length = b, w, 1
            while cur not in image:
                if h.degree(cur) != 2:
                    return f"subdividing vertex {cur} has degree {h.degree(cur)}"
                seen.add(cur)
                prev, cur = cur, next(x for x in h.neighbors(cur) if x != prev)
                length += 1
                if length > h.n:
                    return "subdividing path does not end at a branch vertex"
            if cur == b:
                return f"a path from branch vertex {b} returns to itself"
            key = tuple(sorted((back[b], back[cur])))
            if b < cur:
                if key in found:
                    return f"edge {key[0]}-{key[1]} is subdivided twice"
                found[key] = length
    if set(h.vertices) - image - seen:
        return "h has vertices on no subdividing path"
    if set(found) != set(g.edges):
        return "subdividing paths do not match the edges of g"
    worst = max(found.values(), default=0)
    if worst > r + 1:
        return f"a subdividing path has length {worst} > r + 1 = {r + 1}"
    return None


def is_r_subdivision(h: Graph, g: Graph, branch: Mapping[int, int], r: int) -> bool:
    return subdivision_violation(h, g, branch, r) is None


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests.

    A shortest cycle is always induced, so this is also the shortest induced
    cycle length.
    """
    best = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def iter_induced_cycles(g: Graph, min_length: int = 3) -> Iterator[Cycle]:
    """Yield every induced cycle of length >= min_length exactly once.

    Each cycle is grown from its least vertex v through vertices > v, as a
    chordless path; it is emitted in canonical orientation (second vertex <
    last vertex), which is exactly the canonical_cycle form.
    """
    verts = g.vertices
    adj = {v: g.neighbors(v) for v in verts}
    for v in verts:
        # blocked[w] > 0: w is adjacent to an interior path vertex (not allowed)
        blocked: dict[int, int] = {}
        path = [v]
        on_path = {v}
        adj_v = adj[v]

        def grow() -> Iterator[Cycle]:
            last = path[-1]
            for w in sorted(adj[last]):
                if w <= v or w in on_path or blocked.get(w, 0):
                    continue
                if w in adj_v:
                    if len(path) >= 2 and path[1] < w and len(path) + 1 >= min_length:
                        yield tuple(path) + (w,)
                    continue
                # last becomes interior once w is appended
                if len(path) >= 2:
                    for x in adj[last]:
                        blocked[x] = blocked.get(x, 0) + 1
                path.append(w)
                on_path.add(w)
                yield from grow()
                on_path.discard(w)
                path.pop()
                if len(path) >= 2:
                    for x in adj[last]:
                        blocked[x] -= 1

        for first in sorted(adj_v):
            if first <= v:
                continue
            path.append(first)
            on_path.add(first)
            yield from grow()
            on_path.discard(first)
            path.pop()


def enumerate_induced_cycles(g: Graph, min_length: int = 3, budget: int = 10**6) -> list[Cycle] | BudgetExceeded:
    if min_length < 3 or budget < 1:
        raise GraphError("need min_length >= 3 and budget >= 1")
    out = []
    for cyc in iter_induced_cycles(g, min_length):
        out.append(cyc)
        if len(out) > budget:
            return BudgetExceeded(budget=budget, found=len(out))
    return sorted(out)
