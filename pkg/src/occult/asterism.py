"""Ordered asterisms: a stable set S hanging off an induced path L.

Positions along L are 0-indexed from the first listed vertex.  A *mark* is a
position whose vertex has a neighbor in S.  Most predicates here reduce to
bookkeeping over marks, because every route interior and every piece is a
contiguous stretch of L.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Graph, GraphError, is_induced_path


@dataclass(frozen=True)
class Violation:
    """First failed clause of some definition, plus a human readable detail."""

    clause: str
    detail: str = ""

    def __bool__(self) -> bool:  # a violation is never "ok"
        return False

    def to_dict(self) -> dict:
        return {"ok": False, "clause": self.clause, "detail": self.detail}


class AsterismError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OrderedAsterism:
    graph: Graph
    S: tuple[int, ...]
    L: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedAsterism):
            return NotImplemented
        return self.S == other.S and self.L == other.L and self.graph == other.graph

    def __hash__(self) -> int:
        return hash((self.S, self.L))

    @property
    def s(self) -> int:
        return len(self.S)

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.L)}

    @cached_property
    def rank(self) -> dict[int, int]:
        """pi^{-1}, 1-based."""
        return {x: i + 1 for i, x in enumerate(self.S)}

    @cached_property
    def nbr_positions(self) -> dict[int, tuple[int, ...]]:
        """Sorted L-positions adjacent to each S-vertex."""
        pos = self.pos
        return {x: tuple(sorted(pos[w] for w in self.graph.neighbors(x) if w in pos)) for x in self.S}

    @cached_property
    def owners(self) -> tuple[tuple[int, ...], ...]:
        """owners[k]: S-vertices adjacent to L[k], in pi-order."""
        out: list[list[int]] = [[] for _ in self.L]
        for x in self.S:
            for k in self.nbr_positions[x]:
                out[k].append(x)
        return tuple(tuple(o) for o in out)

    @cached_property
    def marks(self) -> tuple[int, ...]:
        return tuple(k for k, o in enumerate(self.owners) if o)

    def vertices(self) -> frozenset[int]:
        return frozenset(self.S) | frozenset(self.L)

    def to_dict(self) -> dict:
        return {"S": list(self.S), "L": list(self.L)}


def make_asterism(g: Graph, S: Sequence[int], L: Sequence[int]) -> OrderedAsterism:
    """Validate and return, raising AsterismError on the first violation."""
    res = validate_asterism(g, S, L)
    if isinstance(res, Violation):
        raise AsterismError(f"{res.clause}: {res.detail}")
    return res


def validate_asterism(g: Graph, S: Sequence[int], L: Sequence[int]) -> OrderedAsterism | Violation:
    """Check the asterism clauses in definition order.

    Clauses: "membership" (ids known, no repeats, S and L disjoint),
    "stability", "L-inducedness", "interior-neighbor",
    "end-anticompleteness".
    """
    S, L = tuple(S), tuple(L)
    for v in S + L:
        if v not in g:
            return Violation("membership", f"vertex {v} not in graph")
    if len(set(S)) != len(S) or len(set(L)) != len(L):
        return Violation("membership", "repeated vertex")
    if set(S) & set(L):
        return Violation("membership", f"S and L share {sorted(set(S) & set(L))}")
    if not L:
        return Violation("L-inducedness", "L is empty")
    for i, x in enumerate(S):
        for y in S[i + 1:]:
            if g.has_edge(x, y):
                return Violation("stability", f"{x} ~ {y}")
    if not is_induced_path(g, L):
        return Violation("L-inducedness", "L is not an induced path")
    interior = set(L[1:-1])
    for x in S:
        if not (g.neighbors(x) & interior):
            return Violation("interior-neighbor", f"{x} has no neighbor in the interior of L")
    ends = {L[0], L[-1]}
    for x in S:
        hit = g.neighbors(x) & ends
        if hit:
            return Violation("end-anticompleteness", f"{x} ~ end {min(hit)}")
    return OrderedAsterism(g, S, L)


def restrict(a: OrderedAsterism, X: Iterable[int]) -> OrderedAsterism:
    """a|X, keeping the inherited order."""
    X = set(X)
    if not X <= set(a.S):
        raise AsterismError(f"{sorted(X - set(a.S))} not in S")
    return OrderedAsterism(a.graph, tuple(x for x in a.S if x in X), a.L)


def prefix(a: OrderedAsterism, i: int) -> OrderedAsterism:
    """a^i: the restriction to pi([i])."""
    return OrderedAsterism(a.graph, a.S[:max(i, 0)], a.L)


def with_path(a: OrderedAsterism, L: Sequence[int]) -> OrderedAsterism:
    return OrderedAsterism(a.graph, a.S, tuple(L))


# routes

@dataclass(frozen=True)
class Route:
    """x - L[i..j] - y, stored with its interior in L-order."""

    path: tuple[int, ...]
    span: tuple[int, int]
    minimal: bool = False

    @property
    def ends(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]

    @property
    def length(self) -> int:
        return len(self.path) - 1

    def to_dict(self) -> dict:
        return {"path": list(self.path), "minimal": self.minimal}


def _raw_routes(a: OrderedAsterism) -> list[tuple[int, int, int, int]]:
    """(i, j, x, y): x ~ L[i], y ~ L[j], x has no neighbor in L(i..j], y none in L[i..j)."""
    nb = a.nbr_positions
    out = []
    for x in a.S:
        xs = nb[x]
        for t, i in enumerate(xs):
            stop = xs[t + 1] if t + 1 < len(xs) else len(a.L)
            for j in range(i, stop):
                for y in a.owners[j]:
                    if y == x or (j == i and y < x):  # one orientation for x-v-y
                        continue
                    ys = nb[y]
                    # y must have no neighbor in [i, j)
                    if any(i <= p < j for p in ys):
                        continue
                    out.append((i, j, x, y))
    return out


def routes(a: OrderedAsterism) -> list[Route]:
    """Every route, oriented so its interior runs left to right along L.

    Sorted by (span, ends).  Minimality compares interiors: a route is
    minimal iff no route interior is a proper sub-interval of it.
    """
    raw = sorted(_raw_routes(a))
    spans = {(i, j) for i, j, _, _ in raw}
    out = []
    for i, j, x, y in raw:
        minimal = not any((p, q) != (i, j) and i <= p and q <= j for p, q in spans)
        out.append(Route((x,) + a.L[i:j + 1] + (y,), (i, j), minimal))
    return out


def minimal_routes(a: OrderedAsterism) -> list[Route]:
    return [r for r in routes(a) if r.minimal]


def min_route_length(a: OrderedAsterism) -> float:
    raw = _raw_routes(a)
    return min((j - i + 2 for i, j, _, _ in raw), default=float("inf"))


def is_d_ample(a: OrderedAsterism, d: int) -> bool:
    return min_route_length(a) >= d + 2


def is_ample(a: OrderedAsterism) -> bool:
    return is_d_ample(a, 1)


def is_d_meager(a: OrderedAsterism, d: int) -> bool:
    return all(len(o) <= d for o in a.owners)


# pieces

@dataclass(frozen=True)
class Piece:
    span: tuple[int, int]  # inclusive L-positions
    path: tuple[int, ...]
    external: bool
    open: bool

    @property
    def length(self) -> int:
        return self.span[1] - self.span[0]

    @property
    def kind(self) -> str:
        return "external" if self.external else "internal"

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]

    def to_dict(self) -> dict:
        return {"path": list(self.path), "kind": self.kind, "open": self.open}


def pieces(a: OrderedAsterism) -> list[Piece]:
    """All pieces, left to right.

    With S empty the whole of L is the single (external) piece.
    """
    n = len(a.L)
    bounds = sorted({0, n - 1} | set(a.marks))
    if len(bounds) == 1:
        return [Piece((0, 0), a.L, True, True)]
    out = []
    for p, q in zip(bounds, bounds[1:]):
        external = p == 0 or q == n - 1
        common = set(a.owners[p]) & set(a.owners[q])
        out.append(Piece((p, q), a.L[p:q + 1], external, not common))
    return out


def _meets(g: Graph, x: int, path: Iterable[int]) -> bool:
    nb = g.neighbors(x)
    return any(v in nb for v in path)


def interruption_failures(a: OrderedAsterism) -> list[tuple[int, Piece]]:
    """(i, piece) pairs where pi(i) misses an open piece of a^{i-1}."""
    out = []
    for i in range(1, a.s + 1):
        x = a.S[i - 1]
        for P in pieces(prefix(a, i - 1)):
            if P.open and not _meets(a.graph, x, P.path):
                out.append((i, P))
    return out


def invasion_failures(a: OrderedAsterism, o: int = 1) -> list[tuple[int, Piece]]:
    """(i, piece) pairs where pi(i) misses a closed piece of a^{i-1} of length >= o."""
    out = []
    for i in range(1, a.s + 1):
        x = a.S[i - 1]
        for P in pieces(prefix(a, i - 1)):
            if not P.open and P.length >= o and not _meets(a.graph, x, P.path):
                out.append((i, P))
    return out


def is_interrupted(a: OrderedAsterism) -> bool:
    return not interruption_failures(a)


def is_o_invaded(a: OrderedAsterism, o: int = 1) -> bool:
    return not invasion_failures(a, o)


def is_invaded(a: OrderedAsterism) -> bool:
    return is_o_invaded(a, 1)


def is_full_occultation(a: OrderedAsterism, o: int = 1) -> bool:
    if o < 1:
        raise ValueError("o must be >= 1")
    return is_ample(a) and is_interrupted(a) and is_o_invaded(a, o)


def occultation_violation(a: OrderedAsterism) -> Violation | None:
    """Check the strict axioms (O1)-(O4) for the given order; None if all hold.

    The host is taken to be G[V(a)]: every vertex of L must have degree 1
    (ends) or 3 there.
    """
    g = a.graph
    for k, o in enumerate(a.owners):
        if len(o) > 1:
            return Violation("O1", f"L[{k}]={a.L[k]} has S-neighbors {list(o)}")
    if a.owners[0] or a.owners[-1]:
        return Violation("O2", "an end of L has an S-neighbor")
    for i in range(1, a.s + 1):
        x = a.S[i - 1]
        for P in pieces(prefix(a, i - 1)):
            # a path whose non-L-end ends are marked by pi([i-1]) and whose
            # interior is unmarked is exactly a piece of a^{i-1}
            hits = [v for v in P.interior if g.has_edge(x, v)]
            if len(hits) != 1:
                return Violation("O3", f"pi({i})={x} has {len(hits)} neighbors inside {list(P.path)}")
            ends = [v for v in (P.path[0], P.path[-1]) if g.has_edge(x, v)]
            if ends:
                return Violation("O3", f"pi({i})={x} ~ piece end {ends[0]}")
    inside = a.vertices()
    for v in a.L:
        if len(g.neighbors(v) & inside) == 2:
            return Violation("O4", f"L-vertex {v} has degree 2")
    return None


def is_occultation(a: OrderedAsterism) -> bool:
    return occultation_violation(a) is None


# syzygies

def syzygy_end(a: OrderedAsterism) -> int | None:
    """0 or len(L)-1: an end from which (SY) holds, else None."""
    blocks = [a.nbr_positions[x] for x in a.S]
    if all(b[-1] < c[0] for b, c in zip(blocks, blocks[1:])):
        return 0
    if all(b[0] > c[-1] for b, c in zip(blocks, blocks[1:])):
        return len(a.L) - 1
    return None


def is_syzygy(a: OrderedAsterism) -> bool:
    return syzygy_end(a) is not None


# transition graph

@dataclass(frozen=True)
class TransitionGraph:
    vertices: tuple[int, ...]
    certificates: dict  # (x, y) with x < y  ->  Route

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.certificates)

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def to_dict(self) -> dict:
        return {"S": list(self.vertices),
                "edges": [[x, y, list(self.certificates[(x, y)].path)] for x, y in self.edges]}


def transition_graph(a: OrderedAsterism) -> TransitionGraph:
    """xy is an edge iff some x-y route has interior anticomplete to S - {x, y}.

    The certificate is the shortest such route (ties: leftmost span).
    """
    best: dict[tuple[int, int], Route] = {}
    for r in routes(a):
        x, y = r.ends
        i, j = r.span
        others = [a.owners[k] for k in range(i, j + 1)]
        if any(set(o) - {x, y} for o in others):
            continue
        key = (min(x, y), max(x, y))
        cur = best.get(key)
        if cur is None or (r.length, r.span) < (cur.length, cur.span):
            best[key] = r
    return TransitionGraph(tuple(sorted(a.S)), best)


# cherries and candidates

def is_cherry(g: Graph, a: OrderedAsterism, x: int) -> bool:
    if x in a.vertices():
        raise AsterismError(f"{x} already belongs to the asterism")
    nb = g.neighbors(x)
    if a.L[0] in nb or a.L[-1] in nb:  # (CH1)
        return False
    return all(_meets(g, x, P.path) for P in pieces(a) if P.open)  # (CH2)


def cher(a: OrderedAsterism, x: int) -> OrderedAsterism:
    if not is_cherry(a.graph, a, x):
        raise AsterismError(f"{x} is not a cherry on top")
    return OrderedAsterism(a.graph, a.S + (x,), a.L)


def _extension_window(a_outer: OrderedAsterism, a_prime: OrderedAsterism) -> tuple[int, int, int, int]:
    """Positions (lo, l, r, hi) in L_outer: L' = [l, r]; [lo, hi] is the widest
    stretch around it free of neighbors of pi([s'-1])."""
    pos = a_outer.pos
    l, r = pos[a_prime.L[0]], pos[a_prime.L[-1]]
    if l > r:
        l, r = r, l
    blockers = set()
    for x in a_prime.S[:-1]:
        blockers |= a_outer.graph.neighbors(x)
    lo = l
    while lo - 1 >= 0 and a_outer.L[lo - 1] not in blockers:
        lo -= 1
    hi = r
    while hi + 1 < len(a_outer.L) and a_outer.L[hi + 1] not in blockers:
        hi += 1
    return lo, l, r, hi


def _is_good_extension(a_prime: OrderedAsterism, L: Sequence[int]) -> bool:
    res = validate_asterism(a_prime.graph, a_prime.S, L)
    return isinstance(res, OrderedAsterism) and is_interrupted(res)


def _check_containment(a_outer: OrderedAsterism, x: int, a_prime: OrderedAsterism) -> None:
    if x not in a_outer.S:
        raise AsterismError(f"{x} not in S of the outer asterism")
    if not set(a_prime.S) <= set(a_outer.S) - {x}:
        raise AsterismError("S' must lie in S - {x}")
    pos = a_outer.pos
    if any(v not in pos for v in a_prime.L):
        raise AsterismError("L' must lie in L")
    idx = [pos[v] for v in a_prime.L]
    if idx != list(range(idx[0], idx[0] + len(idx))) and idx != list(range(idx[0], idx[0] - len(idx), -1)):
        raise AsterismError("L' must be a contiguous subpath of L")


def is_candidate(g: Graph, a_outer: OrderedAsterism, x: int, a_prime: OrderedAsterism) -> bool:
    """(CA): no interrupted proper extension of L' inside L avoids pi([s'-1]).

    Any counterexample L'' must lie in the window of L free of neighbors of
    pi([s'-1]) around L'; every sub-path of that window containing L' is
    tried, so this is the definition checked exhaustively.
    """
    _check_containment(a_outer, x, a_prime)
    if not is_interrupted(a_prime):
        raise AsterismError("a' must be interrupted")
    lo, l, r, hi = _extension_window(a_outer, a_prime)
    for p in range(lo, l + 1):
        for q in range(r, hi + 1):
            if (p, q) == (l, r):
                continue
            if _is_good_extension(a_prime, a_outer.L[p:q + 1]):
                return False
    return True


def maximal_extension(a_outer: OrderedAsterism, a_prime: OrderedAsterism) -> OrderedAsterism:
    """Grow L' inside L_outer to a maximal interrupted extension.

    Only the window free of neighbors of pi([s'-1]) is searched; the longest
    admissible path wins (ties: leftmost), which is inclusion-maximal, so the
    result satisfies (CA).  The orientation of L' is kept.
    """
    lo, l, r, hi = _extension_window(a_outer, a_prime)
    best = (l, r)
    for p in range(lo, l + 1):
        for q in range(hi, r - 1, -1):
            if q - p <= best[1] - best[0]:
                break
            if _is_good_extension(a_prime, a_outer.L[p:q + 1]):
                best = (p, q)
                break
    p, q = best
    L = a_outer.L[p:q + 1]
    pos = a_outer.pos
    if len(a_prime.L) > 1 and pos[a_prime.L[0]] > pos[a_prime.L[-1]]:
        L = L[::-1]
    return OrderedAsterism(a_prime.graph, a_prime.S, L)
