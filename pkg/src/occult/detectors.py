"""Small-instance detectors: cliques, bicliques, cycle packings, and validators
for the multi-path structures (constellations, bundles, patches, matches,
geminis, strong blocks)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .asterism import OrderedAsterism, Violation, validate_asterism
from .graph import Cycle, Graph, is_induced_cycle, is_induced_path, iter_induced_cycles


@dataclass(frozen=True)
class SearchResult:
    found: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.found


# cliques and bicliques

def contains_clique(g: Graph, t: int) -> SearchResult:
    """Lexicographically first K_t (as a sorted vertex tuple), if any."""
    if t < 1:
        raise ValueError("t must be >= 1")

    def extend(chosen: list[int], cand: list[int]):
        if len(chosen) == t:
            return tuple(chosen)
        if len(chosen) + len(cand) < t:
            return None
        for idx, v in enumerate(cand):
            nb = g.neighbors(v)
            hit = extend(chosen + [v], [w for w in cand[idx + 1:] if w in nb])
            if hit:
                return hit
        return None

    w = extend([], list(g.vertices))
    return SearchResult(w is not None, w)


def _stable_subsets(g: Graph, cand: Sequence[int], k: int):
    """Stable k-subsets of cand, in lexicographic order."""
    def rec(start, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for idx in range(start, len(cand)):
            v = cand[idx]
            if all(not g.has_edge(v, u) for u in chosen):
                yield from rec(idx + 1, chosen + [v])
    yield from rec(0, [])


def contains_biclique(g: Graph, t: int) -> SearchResult:
    """Induced K_{t,t}: stable A, B of size t, complete to each other.

    The witness is (A, B) with min(A) the least vertex of A u B.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    for a0 in g.vertices:
        upper = [v for v in sorted(g.neighbors(a0)) if v > a0]
        for B in _stable_subsets(g, upper, t):
            common = set.intersection(*(set(g.neighbors(b)) for b in B))
            rest = sorted(v for v in common if v > a0 and not g.has_edge(v, a0))
            for A_rest in _stable_subsets(g, rest, t - 1):
                return SearchResult(True, ((a0,) + A_rest, B))
    return SearchResult(False, None)


# perforation

@dataclass(frozen=True)
class Perforated:
    c: int
    o: int
    cycles_examined: int
    status: str = "Perforated"

    def to_dict(self) -> dict:
        return {"status": self.status, "c": self.c, "o": self.o, "cycles_examined": self.cycles_examined}


@dataclass(frozen=True)
class NotPerforated:
    c: int
    o: int
    witness: tuple[Cycle, ...]
    status: str = "NotPerforated"

    def to_dict(self) -> dict:
        return {"status": self.status, "c": self.c, "o": self.o, "witness": [list(w) for w in self.witness]}


@dataclass(frozen=True)
class Indeterminate:
    c: int
    o: int
    budget: int
    cycles_found: int
    search_nodes: int
    reason: str
    status: str = "Indeterminate"

    def to_dict(self) -> dict:
        return {"status": self.status, "c": self.c, "o": self.o, "budget": self.budget,
                "cycles_found": self.cycles_found, "search_nodes": self.search_nodes, "reason": self.reason}


PerforationVerdict = Perforated | NotPerforated | Indeterminate


def is_perforated(g: Graph, c: int, o: int = 1, budget: int = 10 ** 6) -> PerforationVerdict:
    """Look for c pairwise disjoint, pairwise anticomplete induced cycles of
    length >= o+2.

    Cycles are enumerated lazily; each new cycle is tested against the ones
    already seen (two cycles conflict iff one meets the closed neighborhood of
    the other), and a branch-and-bound search for c-1 mutually compatible
    partners runs among those compatible with it.  ``budget`` caps both the
    number of cycles and the number of search nodes.
    """
    if c < 1 or o < 1:
        raise ValueError("need c >= 1 and o >= 1")
    index = {v: i for i, v in enumerate(g.vertices)}
    nbhd = {v: (1 << index[v]) | sum(1 << index[w] for w in g.neighbors(v)) for v in g.vertices}
    masks: list[int] = []   # vertex set of each cycle
    closed: list[int] = []  # closed neighborhood of each cycle
    cycles: list[Cycle] = []
    nodes = 0

    def search(chosen: list[int], cand: list[int], need: int):
        nonlocal nodes
        if need == 0:
            return chosen
        if len(cand) < need:
            return None
        for idx, j in enumerate(cand):
            nodes += 1
            if nodes > budget:
                raise _OutOfBudget
            rest = [k for k in cand[idx + 1:] if not (closed[j] & masks[k])]
            hit = search(chosen + [j], rest, need - 1)
            if hit is not None:
                return hit
        return None

    try:
        for cyc in iter_induced_cycles(g, o + 2):
            if len(cycles) >= budget:
                return Indeterminate(c, o, budget, len(cycles), nodes, "cycle budget exhausted")
            m = sum(1 << index[v] for v in cyc)
            nb = 0
            for v in cyc:
                nb |= nbhd[v]
            me = len(cycles)
            cycles.append(cyc)
            masks.append(m)
            closed.append(nb)
            if c == 1:
                return NotPerforated(c, o, (cyc,))
            cand = [k for k in range(me) if not (nb & masks[k])]
            hit = search([me], cand, c - 1)
            if hit is not None:
                return NotPerforated(c, o, tuple(sorted(cycles[k] for k in hit)))
    except _OutOfBudget:
        return Indeterminate(c, o, budget, len(cycles), nodes, "search budget exhausted")
    return Perforated(c, o, len(cycles))


class _OutOfBudget(Exception):
    pass


def verify_cycle_packing(g: Graph, cycles: Sequence[Sequence[int]], o: int = 1) -> Violation | None:
    """Independent check of a packing witness; None when it is valid."""
    for k, cyc in enumerate(cycles):
        if not is_induced_cycle(g, cyc):
            return Violation("induced-cycle", f"cycle {k} is not an induced cycle")
        if len(cyc) < o + 2:
            return Violation("length", f"cycle {k} has length {len(cyc)} < {o + 2}")
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            A, B = set(cycles[i]), set(cycles[j])
            if A & B:
                return Violation("disjointness", f"cycles {i} and {j} share {sorted(A & B)}")
            if any(g.has_edge(u, v) for u in A for v in B):
                return Violation("anticompleteness", f"cycles {i} and {j} are joined by an edge")
    return None


# strong blocks, stability

def _is_path(g: Graph, p: Sequence[int]) -> bool:
    """A path subgraph: distinct vertices, consecutive ones adjacent (chords allowed)."""
    return len(set(p)) == len(p) and all(g.has_edge(u, v) for u, v in zip(p, p[1:]))


def verify_strong_block(g: Graph, B: Iterable[int], witness: Mapping, k: int) -> bool:
    """Check the strong k-block clauses against an explicit path system.

    ``witness`` maps each 2-subset {x, y} of B (any 2-element iterable key) to
    a list of vertex sequences.  Raises ValueError when the structure is
    malformed (missing pairs, paths with the wrong ends).
    """
    B = sorted(set(B))
    system: dict[frozenset, list[tuple[int, ...]]] = {}
    for key, paths in witness.items():
        pair = frozenset(key)
        if len(pair) != 2:
            raise ValueError(f"witness key {key!r} is not a 2-subset")
        system[pair] = [tuple(p) for p in paths]
    for x, y in combinations(B, 2):
        if frozenset((x, y)) not in system:
            raise ValueError(f"no path collection for {{{x}, {y}}}")
    if len(B) < k:
        return False
    for pair, paths in system.items():
        x, y = sorted(pair)
        for p in paths:
            if {p[0], p[-1]} != {x, y}:
                raise ValueError(f"a path for {{{x}, {y}}} has ends {p[0]}, {p[-1]}")
    used: dict[frozenset, set[int]] = {}
    for x, y in combinations(B, 2):
        pair = frozenset((x, y))
        paths = system[pair]
        if len(set(paths)) < k or len({p if p[0] == x else p[::-1] for p in paths}) < k:
            return False
        if not all(_is_path(g, p) for p in paths):
            return False
        inner: set[int] = set()
        for p in paths:
            mid = set(p[1:-1])
            if mid & inner:
                return False
            inner |= mid
        used[pair] = inner | {x, y}
    pairs = list(used)
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if used[pairs[i]] & used[pairs[j]] != pairs[i] & pairs[j]:
                return False
    return True


def is_d_stable(g: Graph, S: Iterable[int], d: int) -> bool:
    """No two distinct vertices of S are joined by a path of length <= d."""
    S = set(S)
    for s in S:
        dist = g.distances_from(s, limit=d)
        if any(v in S and v != s for v in dist):
            return False
    return True


# multi-path structures

@dataclass(frozen=True)
class Constellation:
    S: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"S": list(self.S), "paths": [list(p) for p in self.paths]}


@dataclass(frozen=True)
class Gemini:
    g1: OrderedAsterism
    g2: OrderedAsterism
    Q: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"g1": self.g1.to_dict(), "g2": self.g2.to_dict(), "Q": [list(q) for q in self.Q]}


def _polypath_violation(g: Graph, paths: Sequence[Sequence[int]], plain: bool) -> Violation | None:
    for j, p in enumerate(paths):
        if not is_induced_path(g, p):
            return Violation("path", f"path {j} is not an induced path")
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if set(paths[i]) & set(paths[j]):
                return Violation("disjointness", f"paths {i} and {j} intersect")
    if plain:
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                if any(g.has_edge(u, v) for u in paths[i] for v in paths[j]):
                    return Violation("plainness", f"paths {i} and {j} are joined by an edge")
    return None


def validate_bundle(g: Graph, S: Sequence[int], paths: Sequence[Sequence[int]],
                    require_plain: bool = False) -> Violation | None:
    if any(v not in g for v in S):
        return Violation("membership", "unknown vertex in S")
    return _polypath_violation(g, paths, require_plain)


def validate_constellation(g: Graph, S: Sequence[int], paths: Sequence[Sequence[int]],
                           require_plain: bool = True) -> Violation | None:
    """Clauses in order: path, disjointness, stability, universal-neighbor,
    plainness.  A universal-neighbor violation names (vertex, path index)."""
    bad = _polypath_violation(g, paths, False)
    if bad is not None:
        return bad
    on_paths = set().union(*map(set, paths)) if paths else set()
    if set(S) & on_paths:
        return Violation("disjointness", f"S meets the paths at {sorted(set(S) & on_paths)}")
    if len(set(S)) != len(S) or any(v not in g for v in S):
        return Violation("membership", "S has repeated or unknown vertices")
    for x, y in combinations(S, 2):
        if g.has_edge(x, y):
            return Violation("stability", f"{x} ~ {y}")
    for x in S:
        for j, p in enumerate(paths):
            if not (g.neighbors(x) & set(p)):
                return Violation("universal-neighbor", f"vertex {x} has no neighbor in path {j}",)
    if require_plain:
        return _polypath_violation(g, paths, True)
    return None


def validate_patch(g: Graph, X: Iterable[int], z: int, paths: Sequence[Sequence[int]], d: int) -> Violation | None:
    """(d, r)-patch ({z}, paths) for X; r = len(paths)."""
    X = set(X)
    bad = _polypath_violation(g, paths, False)
    if bad is not None:
        return bad
    if any(z in p for p in paths):  # (P1)
        return Violation("P1", f"{z} lies on a path")
    for j, p in enumerate(paths):
        if len(p) - 1 < d:  # (P2)
            return Violation("P2", f"path {j} has length {len(p) - 1} < {d}")
    nz = g.neighbors(z)
    for j, p in enumerate(paths):  # (P3)
        ok = False
        for xl, yl in ((p[0], p[-1]), (p[-1], p[0])):
            if set(p) & X == {xl} and {v for v in p if v in nz} == {yl}:
                ok = True
        if not ok:
            return Violation("P3", f"path {j} does not meet X and N(z) only at its two ends")
    return None


def validate_match(g: Graph, X: Iterable[int], paths: Sequence[Sequence[int]], d: int) -> Violation | None:
    X = set(X)
    bad = _polypath_violation(g, paths, False)
    if bad is not None:
        return bad
    for j, p in enumerate(paths):
        if len(p) - 1 < d:
            return Violation("M1", f"path {j} has length {len(p) - 1} < {d}")
    ends = {p[0] for p in paths} | {p[-1] for p in paths}
    on = set().union(*map(set, paths)) if paths else set()
    if on & X != ends:
        return Violation("M2", "paths meet X somewhere other than exactly at their ends")
    return None


def validate_gemini(g: Graph, gem: Gemini) -> Violation | None:
    """(G1)-(G3).

    The anticompleteness clause of (G3) is checked as: Q_i - pi_1(i) is
    anticomplete to L_1, and Q_i - pi_2(i) is anticomplete to L_2.  Pairing
    each connector end with the other side instead would forbid pi_2(i) from
    seeing L_2 at all, which no asterism allows.
    """
    g1, g2 = gem.g1, gem.g2
    for name, a in (("g1", g1), ("g2", g2)):
        res = validate_asterism(g, a.S, a.L)
        if isinstance(res, Violation):
            return Violation(f"{name}-{res.clause}", res.detail)
    if g1.s != g2.s or len(gem.Q) != g1.s:
        return Violation("size", "both asterisms and Q must have g entries")
    V1, V2 = g1.vertices(), g2.vertices()
    S1, S2 = set(g1.S), set(g2.S)
    if V1 & V2 != S1 & S2:  # (G1)
        return Violation("G1", "the two asterisms overlap outside S")
    for x in S1 & S2:
        if g1.rank[x] != g2.rank[x]:
            return Violation("G1", f"shared {x} has different ranks")
    A, B = V1 - V2, V2 - V1
    if any(g.has_edge(u, v) for u in A for v in B):  # (G2)
        return Violation("G2", "V(g1) - V(g2) is not anticomplete to V(g2) - V(g1)")
    bad = _polypath_violation(g, gem.Q, True)
    if bad is not None:
        return Violation(f"G3-{bad.clause}", bad.detail)
    L1, L2 = set(g1.L), set(g2.L)
    for i, q in enumerate(gem.Q):
        if set(q) & (L1 | L2):
            return Violation("G3", f"Q_{i + 1} meets L_1 or L_2")
        if {q[0], q[-1]} != {g1.S[i], g2.S[i]}:
            return Violation("G3", f"Q_{i + 1} does not join pi_1({i + 1}) and pi_2({i + 1})")
        rest1 = set(q) - {g1.S[i]}
        rest2 = set(q) - {g2.S[i]}
        if any(g.neighbors(v) & L1 for v in rest1) or any(g.neighbors(v) & L2 for v in rest2):
            return Violation("G3", f"Q_{i + 1} has a stray edge into L_1 or L_2")
    return None


def shortest_path_in(g: Graph, allowed: Iterable[int], source: int, target: int) -> tuple[int, ...] | None:
    """BFS shortest path inside G[allowed]; ties broken toward smaller ids."""
    allowed = set(allowed)
    prev = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for w in sorted(g.neighbors(u)):
            if w in allowed and w not in prev:
                prev[w] = u
                queue.append(w)
    if target not in prev:
        return None
    out = [target]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return tuple(reversed(out))
