"""Deterministic and seeded generators for the structure families used here.

Every generator returns a compact graph (vertex ids 0..n-1) together with the
witness structure that the matching validator accepts.  Seeded generators use
``random.Random(seed)`` only, so equal (parameters, seed) give equal bytes.
"""
from __future__ import annotations

import random
from typing import Mapping, Sequence

from .asterism import OrderedAsterism, is_full_occultation, pieces, prefix
from .detectors import Constellation, Gemini
from .graph import Graph


class GenerationError(ValueError):
    pass


def parse_seed(seed: int | str | None) -> int:
    """Accept ints, decimal strings and 0x-prefixed hex strings."""
    if seed is None:
        return 0
    if isinstance(seed, int):
        value = seed
    else:
        text = str(seed).strip().lower()
        value = int(text, 16) if text.startswith("0x") else int(text, 10)
    if not 0 <= value < 2 ** 64:
        raise ValueError(f"seed {seed!r} is not a 64-bit unsigned integer")
    return value


def _rng(seed) -> random.Random:
    return random.Random(parse_seed(seed))


# basic families

def complete(t: int) -> Graph:
    if t < 1:
        raise GenerationError("t must be >= 1")
    return Graph(range(t), ((u, v) for u in range(t) for v in range(u + 1, t)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GenerationError("a and b must be >= 1")
    return Graph(range(a + b), ((u, a + v) for u in range(a) for v in range(b)))


def wall(t: int) -> Graph:
    """The t-by-t wall.

    Start from t rows of 2t vertices, each row a path; join row r to row r+1
    at every column c with c = r (mod 2).  The two corners left with degree 1
    are then deleted, so |V| = 2t^2 - 2 for t >= 2 (wall(1) is K_2).
    Vertices are numbered row by row after the deletion.
    """
    if t < 1:
        raise GenerationError("t must be >= 1")
    if t == 1:
        return Graph(range(2), [(0, 1)])
    w = 2 * t

    def vid(r, c):
        return r * w + c

    edges = []
    for r in range(t):
        edges += [(vid(r, c), vid(r, c + 1)) for c in range(w - 1)]
        if r + 1 < t:
            edges += [(vid(r, c), vid(r + 1, c)) for c in range(w) if c % 2 == r % 2]
    g = Graph(range(t * w), edges)
    keep = [v for v in g.vertices if g.degree(v) > 1]
    return g.induced_subgraph(keep).relabeled()[0]


# occultations

def _canonical_marks(s: int) -> list[list[int]]:
    """marks[i-1]: positions of x_i on v_0..v_{2^s}."""
    n = 2 ** s
    return [[k for k in range(1, n) if k % 2 ** (s - i + 1) == 2 ** (s - i)] for i in range(1, s + 1)]


def _assemble(L_len: int, marks: Sequence[Sequence[int]]) -> tuple[Graph, OrderedAsterism]:
    """Path on ids 0..L_len-1, then S-vertex i (0-based) gets id L_len+i."""
    edges = [(k, k + 1) for k in range(L_len - 1)]
    for i, ks in enumerate(marks):
        edges += [(L_len + i, k) for k in ks]
    g = Graph(range(L_len + len(marks)), edges)
    S = tuple(L_len + i for i in range(len(marks)))
    return g, OrderedAsterism(g, S, tuple(range(L_len)))


def occultation(s: int) -> tuple[Graph, OrderedAsterism]:
    """Canonical s-occultation: L = v_0..v_{2^s} (ids 0..2^s), x_i = 2^s + i,
    with x_i ~ v_k iff k = 2^{s-i} (mod 2^{s-i+1})."""
    if s < 1:
        raise GenerationError("s must be >= 1")
    return _assemble(2 ** s + 1, _canonical_marks(s))


def _subdivided_canonical(s: int, lengths) -> tuple[int, list[list[int]]]:
    n = 2 ** s
    if isinstance(lengths, int):
        lengths = [lengths] * n
    lengths = list(lengths)
    if len(lengths) != n or any(k < 1 for k in lengths):
        raise GenerationError(f"need {n} positive L-edge lengths")
    where = [0]
    for k in lengths:
        where.append(where[-1] + k)
    marks = [[where[k] for k in ks] for ks in _canonical_marks(s)]
    return where[-1] + 1, marks


def full_occultation(s: int, o: int = 1, extra: Mapping[tuple[int, int], int] | None = None,
                     subdivision: int | Sequence[int] = 1, seed=0) -> tuple[Graph, OrderedAsterism]:
    """A full (s, o)-occultation grown from the canonical one.

    The 2^s edges of L are subdivided per ``subdivision``.  Then, for each key
    (i, p) of ``extra`` in sorted order, pi(i) receives that many additional
    neighbors inside the interior of piece p (0-based, left to right) of the
    prefix a^{i-1}.  Candidates are L-vertices without S-neighbors, tried in a
    seed-determined order; an edge is kept only if the result is still a full
    (s, o)-occultation.  Unsatisfiable requests raise GenerationError.
    """
    if s < 0 or o < 1:
        raise GenerationError("need s >= 0 and o >= 1")
    rng = _rng(seed)
    L_len, marks = _subdivided_canonical(s, subdivision)
    g, a = _assemble(L_len, marks)
    for (i, p), count in sorted((extra or {}).items()):
        if not 1 <= i <= s:
            raise GenerationError(f"extra for pi({i}) but s = {s}")
        for _ in range(count):
            ps = pieces(prefix(a, i - 1))
            if not 0 <= p < len(ps):
                raise GenerationError(f"prefix a^{i - 1} has no piece {p}")
            candidates = [k for k in range(ps[p].span[0] + 1, ps[p].span[1]) if not a.owners[k]]
            rng.shuffle(candidates)
            for k in candidates:
                marks[i - 1].append(k)
                g2, a2 = _assemble(L_len, marks)
                if is_full_occultation(a2, o):
                    g, a = g2, a2
                    break
                marks[i - 1].pop()
            else:
                raise GenerationError(f"cannot add another neighbor of pi({i}) in piece {p}")
    return g, a


def random_full_occultation(s: int, o: int, seed=0, n_extra: int = 3, max_sub: int = 3,
                            attempts: int = 200) -> tuple[Graph, OrderedAsterism]:
    """Seeded full (s, o)-occultation with random L-edge lengths in 1..max_sub
    and up to n_extra extra S-to-L edges, each kept only if the result stays full."""
    rng = _rng(seed)
    L_len, marks = _subdivided_canonical(s, [rng.randint(1, max_sub) for _ in range(2 ** s)])
    g, a = _assemble(L_len, marks)
    added = 0
    for _ in range(attempts):
        if added >= n_extra or s == 0:
            break
        i = rng.randint(1, s)
        free = [k for k in range(1, L_len - 1) if not a.owners[k]]
        if not free:
            break
        k = rng.choice(free)
        marks[i - 1].append(k)
        g2, a2 = _assemble(L_len, marks)
        if is_full_occultation(a2, o):
            g, a = g2, a2
            added += 1
        else:
            marks[i - 1].pop()
    return g, a


def ample_interrupted_asterism(s: int, d: int, seed=None) -> tuple[Graph, OrderedAsterism]:
    """Canonical s-occultation with every L-edge subdivided into d+1 edges.

    With a seed, each L-edge independently gets one more edge with
    probability 1/2.  s = 0 gives a bare path with d+2 vertices.
    """
    if s < 0 or d < 0:
        raise GenerationError("need s >= 0 and d >= 0")
    n = 2 ** s
    lengths = [d + 1] * n
    if seed is not None:
        rng = _rng(seed)
        lengths = [k + rng.randint(0, 1) for k in lengths]
    L_len, marks = _subdivided_canonical(s, lengths)
    return _assemble(L_len, marks)


def _realize(seq: Sequence[int], r: int, rng: random.Random, d: int, max_gap: int) -> tuple[Graph, OrderedAsterism]:
    """Lay out a sequence of mark owners (0-based) along a path.

    Marks of distinct owners are at least d apart (so routes have length at
    least d+2); marks of one owner may be adjacent.  Ends stay unmarked.
    """
    pos = rng.randint(1, max(1, max_gap))
    marks: list[list[int]] = [[] for _ in range(r)]
    prev = None
    for owner in seq:
        if prev is not None:
            lo = max(d, 1) if owner != prev else 1
            pos += rng.randint(lo, max(lo, max_gap))
        marks[owner].append(pos)
        prev = owner
    L_len = pos + rng.randint(1, max(1, max_gap)) + 1
    return _assemble(L_len, marks)


def random_interrupted_asterism(r: int, seed=0, invade_prob: float = 0.5, d: int = 2,
                                max_block: int = 2, max_gap: int = 3) -> tuple[Graph, OrderedAsterism]:
    """Seeded d-ample interrupted ordered r-asterism.

    Vertices are added in order; pi(i) drops 1..max_block consecutive marks
    into every open piece of the current prefix, and into each closed piece
    with probability ``invade_prob``.
    """
    rng = _rng(seed)
    seq: list[int] = []
    for i in range(r):
        out: list[int] = []
        for k in range(len(seq) + 1):
            left = seq[k - 1] if k > 0 else None
            right = seq[k] if k < len(seq) else None
            is_open = left is None or right is None or left != right
            if is_open or rng.random() < invade_prob:
                out += [i] * rng.randint(1, max_block)
            if k < len(seq):
                out.append(seq[k])
        seq = out
    return _realize(seq, r, rng, d, max_gap)


def random_meager_asterism(n_s: int, d: int, seed=0, max_nbrs: int = 3) -> tuple[Graph, OrderedAsterism]:
    """Seeded d-meager asterism with n_s S-vertices.

    Each S-vertex gets 1..max_nbrs neighbors; a per-instance spread decides
    whether neighborhoods are local windows (syzygy-like) or scattered.
    """
    if d < 1 or n_s < 0:
        raise GenerationError("need d >= 1 and n_s >= 0")
    rng = _rng(seed)
    interior = rng.randint(max(1, -(-n_s // d)), 3 * n_s + 2)
    L_len = interior + 2
    load = [0] * L_len
    spread = rng.choice([1, 2, 4, interior])
    marks = []
    for t in range(n_s):
        free = [k for k in range(1, L_len - 1) if load[k] < d]
        spare = sum(d - load[k] for k in free) - (n_s - t)  # capacity beyond one slot each
        centre = rng.choice(free)
        window = [k for k in free if abs(k - centre) <= spread and k != centre]
        want = min(len(window), rng.randint(1, max_nbrs) - 1, spare)
        ks = sorted([centre] + rng.sample(window, max(0, want)))
        for k in ks:
            load[k] += 1
        marks.append(ks)
    return _assemble(L_len, marks)


def syzygy(a: int, gaps: Sequence[int] | None = None, seed=0, max_block: int = 3) -> tuple[Graph, OrderedAsterism]:
    """An a-syzygy read from L[0]: pi(i)'s neighbors form the i-th block.

    ``gaps[i]`` is the number of L-vertices strictly between block i and block
    i+1 (default 1), so a route between consecutive blocks has length
    gaps[i] + 3.  Block sizes (1..max_block) and in-block spacing are seeded.
    """
    if a < 1:
        raise GenerationError("a must be >= 1")
    gaps = [1] * (a - 1) if gaps is None else list(gaps)
    if len(gaps) != a - 1 or any(k < 1 for k in gaps):
        raise GenerationError(f"need {a - 1} positive gaps")
    rng = _rng(seed)
    marks, pos = _syzygy_marks(a, gaps, rng, max_block)
    return _assemble(pos + 2, marks)


def _syzygy_marks(a, gaps, rng, max_block):
    marks = []
    pos = 1
    for i in range(a):
        block = [pos]
        for _ in range(rng.randint(1, max_block) - 1):
            pos += rng.randint(1, 2)
            block.append(pos)
        marks.append(block)
        if i < a - 1:
            pos += gaps[i] + 1
    return marks, pos


def gemini(g: int, o: int, seed=0) -> tuple[Graph, Gemini]:
    """A g-gemini whose two sides are 2o-ample g-syzygies.

    Connector Q_i either has length 0 (pi_1(i) = pi_2(i) is shared) or length
    2 or 3 through fresh vertices; length 1 would break cross-anticompleteness.
    """
    if g < 1 or o < 1:
        raise GenerationError("need g >= 1 and o >= 1")
    rng = _rng(seed)
    edges: list[tuple[int, int]] = []
    nxt = 0

    def fresh(k):
        nonlocal nxt
        ids = list(range(nxt, nxt + k))
        nxt += k
        return ids

    sides = []
    for _ in range(2):
        gaps = [2 * o - 1 + rng.randint(0, 1) for _ in range(g - 1)]
        marks, last = _syzygy_marks(g, gaps, rng, 2)
        L = fresh(last + 2)
        edges += list(zip(L, L[1:]))
        sides.append((L, marks))
    shared = [rng.random() < 1 / 3 for _ in range(g)]
    S1, S2, Q = [], [], []
    for i in range(g):
        if shared[i]:
            (x,) = fresh(1)
            S1.append(x)
            S2.append(x)
            Q.append((x,))
        else:
            x, y = fresh(2)
            inner = fresh(rng.randint(1, 2))
            path = [x] + inner + [y]
            edges += list(zip(path, path[1:]))
            S1.append(x)
            S2.append(y)
            Q.append(tuple(path))
    for (L, marks), S in zip(sides, (S1, S2)):
        for i, ks in enumerate(marks):
            edges += [(S[i], L[k]) for k in ks]
    graph = Graph(range(nxt), edges)
    g1 = OrderedAsterism(graph, tuple(S1), tuple(sides[0][0]))
    g2 = OrderedAsterism(graph, tuple(S2), tuple(sides[1][0]))
    return graph, Gemini(g1, g2, tuple(Q))


def constellation(s: int, l: int, lengths: int | Sequence[int] = 1, seed=0,
                  plain: bool = True) -> tuple[Graph, Constellation]:
    """An (s, l)-constellation.

    Each path is laid out like a syzygy on a seeded permutation of S:
    every S-vertex gets a block of 1-2 neighbors, consecutive blocks are
    separated by ``lengths`` (per path, or one int) L-vertices, and both ends
    are unmarked, so (S, path) is also an asterism.  With ``plain=False`` the
    last vertex of path 0 is joined to the first vertex of path 1.
    """
    if s < 0 or l < 1:
        raise GenerationError("need s >= 0 and l >= 1")
    if not plain and l < 2:
        raise GenerationError("a non-plain constellation needs two paths")
    gaps_per = [lengths] * l if isinstance(lengths, int) else list(lengths)
    if len(gaps_per) != l or any(k < 1 for k in gaps_per):
        raise GenerationError(f"need {l} positive gap lengths")
    rng = _rng(seed)
    S = list(range(s))
    nxt = s
    edges = []
    paths = []
    for j in range(l):
        order = S[:]
        rng.shuffle(order)
        if s:
            marks, last = _syzygy_marks(s, [gaps_per[j]] * (s - 1), rng, 2)
        else:
            marks, last = [], gaps_per[j]
        L = list(range(nxt, nxt + last + 2))
        nxt += len(L)
        edges += list(zip(L, L[1:]))
        for x, ks in zip(order, marks):
            edges += [(x, L[k]) for k in ks]
        paths.append(tuple(L))
    if not plain:
        edges.append((paths[0][-1], paths[1][0]))
    graph = Graph(range(nxt), edges)
    return graph, Constellation(tuple(S), tuple(paths))
