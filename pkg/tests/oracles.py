"""Brute-force reference implementations used only by the tests.

None of these import from ``occult`` beyond the Graph container; they work
straight from the definitions (or via networkx) so that a shared bug cannot
make both sides of a comparison agree.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import networkx as nx


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def adjacency(g) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in g.vertices}


# cycles

def induced_cycles(g, min_length: int = 3) -> set[tuple[int, ...]]:
    """Chordless cycles via networkx, canonicalised as (min vertex first,
    smaller neighbor second)."""
    out = set()
    for cyc in nx.chordless_cycles(to_nx(g)):
        if len(cyc) < max(3, min_length):
            continue
        i = cyc.index(min(cyc))
        rot = cyc[i:] + cyc[:i]
        if rot[-1] < rot[1]:
            rot = [rot[0]] + rot[1:][::-1]
        out.add(tuple(rot))
    return out


def girth(g) -> float:
    return nx.girth(to_nx(g))


def is_packing(g, cycles, o) -> bool:
    adj = adjacency(g)
    for cyc in cycles:
        if len(cyc) < o + 2 or len(set(cyc)) != len(cyc):
            return False
        k = len(cyc)
        for i in range(k):
            for j in range(i + 1, k):
                if (cyc[j] in adj[cyc[i]]) != ((j - i) in (1, k - 1)):
                    return False
    for a, b in combinations(cycles, 2):
        if set(a) & set(b) or any(adj[u] & set(b) for u in a):
            return False
    return True


def has_packing(g, c, o) -> bool:
    """c pairwise disjoint anticomplete induced cycles of length >= o+2."""
    cycles = sorted(induced_cycles(g, o + 2))
    adj = adjacency(g)

    def ok(a, b):
        return not (set(a) & set(b)) and not any(adj[u] & set(b) for u in a)

    def rec(start, chosen):
        if len(chosen) == c:
            return True
        for i in range(start, len(cycles)):
            if all(ok(cycles[i], ch) for ch in chosen) and rec(i + 1, chosen + [cycles[i]]):
                return True
        return False

    return rec(0, [])


# cliques, bicliques

def has_clique(g, t) -> bool:
    adj = adjacency(g)
    return any(all(b in adj[a] for a, b in combinations(X, 2)) for X in combinations(g.vertices, t))


def has_induced_biclique(g, t) -> bool:
    adj = adjacency(g)
    vs = g.vertices
    for A in combinations(vs, t):
        if any(b in adj[a] for a, b in combinations(A, 2)):
            continue
        rest = [v for v in vs if v not in A and all(v in adj[a] for a in A)]
        for B in combinations(rest, t):
            if not any(b in adj[a] for a, b in combinations(B, 2)):
                return True
    return False


# treewidth

def treewidth(g) -> int:
    """Subset recurrence TW(S) = min_v max(TW(S - v), |Q(S - v, v)|), where
    Q(S, v) are the vertices outside S + v reachable from v through S."""
    vs = list(g.vertices)
    n = len(vs)
    if n == 0:
        return 0
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * n
    for u, v in g.edges:
        nb[idx[u]] |= 1 << idx[v]
        nb[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1

    def q(S, v):
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            m = nb[u] & ~seen
            seen |= m
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                if S >> w & 1:
                    stack.append(w)
                else:
                    out |= low
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(S):
        if S == 0:
            return -1
        best = n
        m = S
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rest = S & ~low
            best = min(best, max(tw(rest), q(rest, v)))
        return best

    return tw(full)


# matchings

def max_matching_size(g) -> int:
    return len(nx.max_weight_matching(to_nx(g), maxcardinality=True))


# intervals

def interval_mis(F) -> int:
    """Largest set of pairwise disjoint closed intervals (bitmask branch)."""
    n = len(F)
    conflict = [sum(1 << j for j in range(n) if j != i and not (F[i][1] < F[j][0] or F[j][1] < F[i][0]))
                for i in range(n)]

    @lru_cache(maxsize=None)
    def mis(mask):
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        return max(mis(mask & ~low), 1 + mis(mask & ~low & ~conflict[v]))

    return mis((1 << n) - 1)


def interval_max_clique(F) -> int:
    """Largest set of pairwise intersecting intervals (bitmask branch)."""
    n = len(F)
    meet = [sum(1 << j for j in range(n) if j != i and not (F[i][1] < F[j][0] or F[j][1] < F[i][0]))
            for i in range(n)]

    @lru_cache(maxsize=None)
    def mc(mask):
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        return max(mc(mask & ~low), 1 + mc(mask & ~low & meet[v]))

    return mc((1 << n) - 1)


def interval_order_types(n: int):
    """All interval orders on n elements up to isomorphism, each as its
    unique compressed representation: a sorted list of n integer intervals
    over 0..m in which every point is some interval's left end and some
    interval's right end."""
    if n == 0:
        return [[]]
    out = []
    for m in range(n):
        ivs = [(l, r) for l in range(m + 1) for r in range(l, m + 1)]

        def rec(start, chosen, lefts, rights):
            left = n - len(chosen)
            need = max(m + 1 - len(lefts), m + 1 - len(rights))
            if need > left:
                return
            if left == 0:
                out.append(list(chosen))
                return
            for k in range(start, len(ivs)):
                l, r = ivs[k]
                chosen.append((l, r))
                rec(k, chosen, lefts | {l}, rights | {r})
                chosen.pop()

        rec(0, [], frozenset(), frozenset())
    return out


# asterisms, straight from the definitions

def routes(g, S, L) -> set[tuple[int, ...]]:
    """Induced paths with both ends in S and nonempty interior inside L,
    returned with the interior in L-order."""
    adj = adjacency(g)
    out = set()
    for x, y in combinations(S, 2):
        for i in range(len(L)):
            for j in range(i, len(L)):
                inner = list(L[i:j + 1])
                for a, b in ((x, y), (y, x)):
                    path = [a] + inner + [b]
                    k = len(path)
                    if all((path[q] in adj[path[p]]) == (q - p == 1) for p in range(k) for q in range(p + 1, k)):
                        out.add(tuple(path))
    return out


def pieces(g, S, L) -> list[tuple[tuple[int, ...], bool, bool]]:
    """(path, external, open) for every piece, from the definition: a subpath
    of nonzero length whose ends are L-ends or S-neighbors and whose interior
    has no S-neighbor."""
    adj = adjacency(g)
    marked = [bool(adj[v] & set(S)) for v in L]
    n = len(L)
    if not S:
        return [(tuple(L), True, True)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            ends_ok = (i == 0 or marked[i]) and (j == n - 1 or marked[j])
            if ends_ok and not any(marked[i + 1:j]):
                common = adj[L[i]] & adj[L[j]] & set(S)
                out.append((tuple(L[i:j + 1]), i == 0 or j == n - 1, not common))
    return out


def is_full_occultation(g, S, L, o) -> bool:
    adj = adjacency(g)
    for x, y in combinations(S, 2):
        if adj[x] & adj[y] & set(L):
            return False
    for i, x in enumerate(S):
        for path, _, is_open in pieces(g, S[:i], L):
            if is_open or len(path) - 1 >= o:
                if not adj[x] & set(path[1:-1] if S[:i] else path):
                    return False
    return True
