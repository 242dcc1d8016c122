"""Hand-built reference structures.

The five-vertex asterism below is the running example used throughout the
tests: path v1..v25 (ids 0..24) and x1..x5 (ids 25..29) in that order.
``NAMES`` maps ids back to the v/x labels for readable assertions.
"""
from __future__ import annotations

from .asterism import OrderedAsterism, pieces
from .detectors import Constellation
from .generators import constellation
from .graph import Graph

# L-neighbors of x1..x5, as 1-based v indices
ASTERISM_NEIGHBORS = {
    1: (3, 5, 8, 11),
    2: (8, 9, 11, 13, 20),
    3: (12, 14, 19, 22),
    4: (11, 16),
    5: (17, 20, 21),
}
PATH_LEN = 25


def v(i: int) -> int:
    """Id of v_i (1-based)."""
    return i - 1


def x(i: int) -> int:
    """Id of x_i (1-based)."""
    return PATH_LEN + i - 1


NAMES = {**{v(i): f"v{i}" for i in range(1, PATH_LEN + 1)},
         **{x(i): f"x{i}" for i in ASTERISM_NEIGHBORS}}


def five_asterism() -> OrderedAsterism:
    """5-asterism with 15 pieces and six transition edges."""
    L = [v(i) for i in range(1, PATH_LEN + 1)]
    edges = list(zip(L, L[1:]))
    for i, nbrs in ASTERISM_NEIGHBORS.items():
        edges += [(x(i), v(j)) for j in nbrs]
    g = Graph(range(PATH_LEN + len(ASTERISM_NEIGHBORS)), edges)
    return OrderedAsterism(g, tuple(x(i) for i in sorted(ASTERISM_NEIGHBORS)), tuple(L))


def cherry_on_five() -> tuple[OrderedAsterism, int]:
    """five_asterism plus a vertex x seeing one interior vertex of every open
    piece and nothing else; x is a cherry on top."""
    a = five_asterism()
    xid = a.graph.n
    edges = list(a.graph.edges)
    for P in pieces(a):
        if P.open:
            inner = P.interior or P.path
            # avoid the ends of L so (CH1) holds
            pick = next(u for u in inner if u not in (a.L[0], a.L[-1]))
            edges.append((xid, pick))
    g = Graph(range(xid + 1), edges)
    return OrderedAsterism(g, a.S, a.L), xid


def constellations() -> tuple[tuple[Graph, Constellation], tuple[Graph, Constellation]]:
    """A non-plain and a plain (3, 3)-constellation."""
    return constellation(3, 3, lengths=2, seed=7, plain=False), constellation(3, 3, lengths=2, seed=7)


def patch_fixture() -> tuple[Graph, set[int], int, list[list[int]]]:
    """A (3, 4)-patch ({z}, paths) for X: four paths of length 3, each with
    one end in X and z adjacent to the other end only."""
    z = 0
    edges = []
    paths = []
    X = set()
    nxt = 1
    for _ in range(4):
        p = list(range(nxt, nxt + 4))
        nxt += 4
        edges += list(zip(p, p[1:])) + [(z, p[-1])]
        X.add(p[0])
        paths.append(p)
    return Graph(range(nxt), edges), X, z, paths


def match_fixture() -> tuple[Graph, set[int], list[list[int]]]:
    """A (7, 3)-match for X: three disjoint paths of length 7 meeting X only
    at their ends, plus one extra X-vertex off the paths."""
    edges = []
    paths = []
    X = set()
    nxt = 0
    for _ in range(3):
        p = list(range(nxt, nxt + 8))
        nxt += 8
        edges += list(zip(p, p[1:]))
        X |= {p[0], p[-1]}
        paths.append(p)
    X.add(nxt)
    edges.append((nxt, paths[0][3]))
    return Graph(range(nxt + 1), edges), X, paths
