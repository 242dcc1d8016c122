"""Constructive kernels: interval split, syzygy-or-constellation, cherry
composition, interrupted-to-occultation, matching-or-cover, and the two
cycle-building constructions.

Every procedure is total.  Where a size bound is not met it may return an
``Insufficient`` outcome; every other outcome is re-validated with the
checkers from ``asterism`` and ``detectors`` before it is returned, and a
failed re-validation raises ``ExtractionError`` (that would be a bug).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Sequence

from .asterism import (AsterismError, OrderedAsterism, Violation, cher, is_candidate, is_cherry,
                       is_d_ample, is_d_meager, is_full_occultation, is_interrupted, is_syzygy,
                       maximal_extension, pieces, prefix, restrict, routes, transition_graph,
                       validate_asterism)
from .detectors import (Constellation, Gemini, NotPerforated, is_perforated, shortest_path_in, validate_constellation,
                        validate_gemini, verify_cycle_packing)
from .graph import Graph, is_induced_cycle


class ExtractionError(ValueError):
    """A precondition failed (or, for post-conditions, an internal bug)."""


# outcomes

@dataclass
class ExtractionOutcome:
    kind: str  # Syzygy | PlainConstellation | FullOccultation | CyclePacking | Insufficient
    asterism: OrderedAsterism | None = None
    constellation: Constellation | None = None
    cycles: tuple[tuple[int, ...], ...] = ()
    reason: str = ""
    trace: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "trace": self.trace}
        if self.asterism is not None:
            out["witness"] = self.asterism.to_dict()
        if self.constellation is not None:
            out["witness"] = self.constellation.to_dict()
        if self.kind == "CyclePacking":
            out["witness"] = [list(c) for c in self.cycles]
        if self.reason:
            out["reason"] = self.reason
        return out


# interval split

@dataclass(frozen=True)
class StableSet:
    ids: tuple[int, ...]


@dataclass(frozen=True)
class Clique:
    ids: tuple[int, ...]
    point: int | None


@dataclass(frozen=True)
class Insufficient:
    max_stable: int
    max_clique: int


def interval_split(F: Sequence[tuple[int, int]], a: int, b: int) -> StableSet | Clique | Insufficient:
    """a pairwise-disjoint intervals, or b intervals through one point.

    The stable side is tried first: greedy by right endpoint gives a maximum
    set of disjoint intervals, returned left to right.  Otherwise a sweep
    finds the leftmost point covered by the most intervals.  Either side is
    guaranteed when len(F) >= a*b.
    """
    if a < 0 or b < 0:
        raise ValueError("a, b must be >= 0")
    for l, r in F:
        if l > r:
            raise ValueError(f"interval [{l}, {r}] has left > right")
    chosen: list[int] = []
    last = None
    for i in sorted(range(len(F)), key=lambda i: (F[i][1], F[i][0], i)):
        if last is None or F[i][0] > last:
            chosen.append(i)
            last = F[i][1]
    if len(chosen) >= a:
        return StableSet(tuple(chosen[:a]))
    best_pt, best = None, []
    for pt in sorted({l for l, _ in F}):
        through = [i for i, (l, r) in enumerate(F) if l <= pt <= r]
        if len(through) > len(best):
            best_pt, best = pt, through
    if len(best) >= b:
        return Clique(tuple(best[:b]), best_pt if b else None)
    return Insufficient(len(chosen), len(best))


# syzygy or constellation

def meager_bound(a: int, l: int, s: int, d: int) -> int:
    """a^{l-1} (s + d(l-1)): the |S| that guarantees success."""
    return a ** (l - 1) * (s + d * (l - 1))


def asterism_to_syzygy_or_constellation(ast: OrderedAsterism, target_a: int, target_l: int,
                                        target_s: int, d: int) -> ExtractionOutcome:
    """Find an a-syzygy or a plain (s, l)-constellation inside a d-meager asterism.

    Recursion on l.  l = 1 returns (S, {L*}) cut to s vertices.  Otherwise
    the spans of the S-neighborhoods form an interval family; a stable set of
    a spans gives a syzygy ordered left to right, and a clique through a point
    u gives, after dropping u's own S-neighbors, an asterism on L[..u] to
    recurse on, whose constellation is then completed with L[u..]*.
    """
    if target_a < 1 or target_l < 1 or target_s < 0 or d < 0:
        raise ExtractionError("need a, l >= 1 and s, d >= 0")
    if not is_d_meager(ast, d):
        raise ExtractionError(f"asterism is not {d}-meager")
    trace: list[dict] = []
    out = _syz_or_const(ast, target_a, target_l, target_s, d, trace)
    out.trace = trace
    _check_outcome(ast, out)
    return out


def _syz_or_const(ast, a, l, s, d, trace) -> ExtractionOutcome:
    L = ast.L
    if l == 1:
        if ast.s < s:
            trace.append({"step": "base", "l": 1, "have": ast.s, "need": s})
            return ExtractionOutcome("Insufficient", reason=f"only {ast.s} S-vertices at l=1, need {s}")
        S = ast.S[:s]
        trace.append({"step": "base", "l": 1, "S": list(S), "path": [L[1], L[-2]] if len(L) > 2 else []})
        return ExtractionOutcome("PlainConstellation", constellation=Constellation(S, (L[1:-1],)))
    F = [(ast.nbr_positions[x][0], ast.nbr_positions[x][-1]) for x in ast.S]
    inner = a ** (l - 2) * (s + d * (l - 2))
    res = interval_split(F, a, inner + d)
    if isinstance(res, StableSet):
        A = tuple(ast.S[i] for i in res.ids)
        trace.append({"step": "stable", "l": l, "S": list(A)})
        return ExtractionOutcome("Syzygy", asterism=OrderedAsterism(ast.graph, A, L))
    if isinstance(res, Insufficient):
        trace.append({"step": "split-failed", "l": l, "max_stable": res.max_stable,
                      "max_clique": res.max_clique, "need_stable": a, "need_clique": inner + d})
        return ExtractionOutcome("Insufficient", reason=f"no {a} disjoint spans and no {inner + d} through a point")
    u = res.point
    B = [ast.S[i] for i in sorted(res.ids)]
    keep = [x for x in B if not ast.graph.has_edge(x, L[u])][:inner]
    trace.append({"step": "clique", "l": l, "point": u, "vertex": L[u],
                  "dropped": [x for x in B if ast.graph.has_edge(x, L[u])], "kept": keep})
    if len(keep) < inner:
        return ExtractionOutcome("Insufficient", reason="too few spans survive dropping the split vertex's neighbors")
    left = OrderedAsterism(ast.graph, tuple(keep), L[:u + 1])
    sub = _syz_or_const(left, a, l - 1, s, d, trace)
    if sub.kind != "PlainConstellation":
        return sub
    c = sub.constellation
    right = L[u + 1:-1]
    trace.append({"step": "append", "l": l, "path": [right[0], right[-1]]})
    return ExtractionOutcome("PlainConstellation", constellation=Constellation(c.S, c.paths + (right,)))


def _check_outcome(src: OrderedAsterism, out: ExtractionOutcome) -> None:
    g = src.graph
    if out.kind == "Syzygy":
        a = out.asterism
        if isinstance(validate_asterism(g, a.S, a.L), Violation) or not is_syzygy(a):
            raise ExtractionError("internal: syzygy witness does not validate")
        if not set(a.S) <= set(src.S) or not _is_subpath(src.L, a.L):
            raise ExtractionError("internal: syzygy is not inside the input")
    elif out.kind == "PlainConstellation":
        c = out.constellation
        bad = validate_constellation(g, c.S, c.paths, require_plain=True)
        if bad is not None or not set(c.S) <= set(src.S) or not all(set(p) <= set(src.L[1:-1]) for p in c.paths):
            raise ExtractionError(f"internal: constellation does not validate ({bad})")


def _is_subpath(L: Sequence[int], P: Sequence[int]) -> bool:
    if not P:
        return True
    pos = {v: i for i, v in enumerate(L)}
    if any(v not in pos for v in P):
        return False
    idx = [pos[v] for v in P]
    step = 1 if len(idx) == 1 or idx[1] > idx[0] else -1
    return all(idx[k + 1] - idx[k] == step for k in range(len(idx) - 1))


# cherries and occultations

def cherry_extend(a_outer: OrderedAsterism, a_prime: OrderedAsterism, x: int) -> OrderedAsterism:
    """cher(a', x), after checking the hypotheses that make it 2-ample and
    interrupted inside a_outer."""
    if not is_d_ample(a_outer, 2):
        raise ExtractionError("outer asterism is not 2-ample")
    try:
        if not is_candidate(a_outer.graph, a_outer, x, a_prime):
            raise ExtractionError("a' is not a candidate (L' is not maximal)")
    except AsterismError as exc:
        raise ExtractionError(f"candidate precondition: {exc}") from exc
    if not is_cherry(a_outer.graph, restrict(a_outer, a_prime.S), x):
        raise ExtractionError(f"{x} is not a cherry on top of a|S'")
    out = cher(a_prime, x)
    if not (is_d_ample(out, 2) and is_interrupted(out)):
        raise ExtractionError("internal: cherry extension is not 2-ample and interrupted")
    return out


def occultation_top(a: OrderedAsterism, r: int, r_prime: int, o: int,
                    prior: OrderedAsterism) -> OrderedAsterism:
    """Extend a full (s-1, o)-occultation inside a^{r'} by x = pi(r).

    prior's path is first grown to a maximal one inside L_a (keeping prior's
    S and order), and x is then put on top as a cherry.
    """
    s = prior.s + 1
    if not (r > r_prime >= s - 1 >= 0) or r > a.s:
        raise ExtractionError(f"need r > r' >= s-1 >= 0 and r <= |S| (r={r}, r'={r_prime}, s={s})")
    if not (is_d_ample(a, 2) and is_interrupted(a)):
        raise ExtractionError("a must be 2-ample and interrupted")
    x = a.S[r - 1]
    for P in pieces(prefix(a, r_prime)):
        if not P.open and P.length >= o and not (a.graph.neighbors(x) & set(P.path)):
            raise ExtractionError(f"pi(r) misses a closed piece {list(P.path)} of the r'-prefix")
    if not set(prior.S) <= set(a.S[:r_prime]) or not _is_subpath(a.L, prior.L):
        raise ExtractionError("prior must sit inside a^{r'}")
    if not is_full_occultation(prior, o):
        raise ExtractionError("prior is not a full occultation")
    grown = maximal_extension(a, prior)
    if not is_full_occultation(grown, o):
        raise ExtractionError("internal: maximal extension lost fullness")
    out = cherry_extend(a, grown, x)
    if not is_full_occultation(out, o):
        raise ExtractionError("internal: result is not a full occultation")
    return out


def interrupted_to_occultation(g: Graph, a: OrderedAsterism, c: int, o: int, s: int) -> ExtractionOutcome:
    """A full (s, o)-occultation inside a, or c disjoint anticomplete cycles
    of length >= o+2.

    a must be a 2-ample interrupted ordered asterism with at least s^c
    S-vertices; only its s^c-prefix is used.  No perforation assumption is
    made: where the argument would need one, the cycles found are returned.
    """
    if c < 1 or o < 1 or s < 0:
        raise ExtractionError("need c, o >= 1 and s >= 0")
    if a.graph != g:
        a = OrderedAsterism(g, a.S, a.L)
    res = validate_asterism(g, a.S, a.L)
    if isinstance(res, Violation):
        raise ExtractionError(f"not an asterism: {res.clause}")
    if not is_d_ample(a, 2):
        raise ExtractionError("asterism is not 2-ample")
    if not is_interrupted(a):
        raise ExtractionError("asterism is not interrupted")
    if a.s < s ** c:
        raise ExtractionError(f"need at least s^c = {s ** c} S-vertices, have {a.s}")
    trace: list[dict] = []
    out = _itoo(prefix(a, s ** c), c, o, s, trace)
    if out.kind == "FullOccultation":
        occ = OrderedAsterism(g, out.asterism.S, out.asterism.L)
        if not is_full_occultation(occ, o) or occ.s != s:
            raise ExtractionError("internal: occultation does not validate")
        out.asterism = occ
    else:
        bad = verify_cycle_packing(g, out.cycles, o)
        if bad is not None or len(out.cycles) != c:
            raise ExtractionError(f"internal: cycle packing does not validate ({bad})")
    out.trace = trace
    return out


def _itoo(a: OrderedAsterism, c: int, o: int, s: int, trace: list[dict]) -> ExtractionOutcome:
    g = a.graph
    if s <= 1:
        trace.append({"step": "base", "c": c, "s": s, "S": list(a.S[:s])})
        return ExtractionOutcome("FullOccultation", asterism=prefix(a, s))
    r, rp = s ** c, (s - 1) ** c
    x = a.S[r - 1]
    sub = _itoo(prefix(a, rp), c, o, s - 1, trace)
    if sub.kind == "CyclePacking":
        return sub
    a_rp = prefix(a, rp)
    missed = [P for P in pieces(a_rp)
              if not P.open and P.length >= o and not (g.neighbors(x) & set(P.path))]
    if not missed:
        occ = occultation_top(a, r, rp, o, sub.asterism)
        trace.append({"step": "top", "c": c, "s": s, "x": x, "S": list(occ.S),
                      "L": [occ.L[0], occ.L[-1]]})
        return ExtractionOutcome("FullOccultation", asterism=occ)
    P = missed[0]
    z = min(set(a_rp.owners[P.span[0]]) & set(a_rp.owners[P.span[1]]), key=a.rank.__getitem__)
    H = P.path + (z,)
    trace.append({"step": "missed-piece", "c": c, "s": s, "x": x, "piece": list(P.path), "z": z})
    if c == 1:
        return ExtractionOutcome("CyclePacking", cycles=(H,))
    S_new = a.S[r - s ** (c - 1): r]
    carved = _carve(a, H, z, S_new, rp)
    if carved is None:
        trace.append({"step": "carve-failed", "c": c, "s": s, "z": z, "S": list(S_new)})
        return _fallback(a, c, o, s, trace)
    y, R, inner = carved
    trace.append({"step": "carve", "c": c, "s": s, "y": y, "route": list(R.path), "S": list(S_new),
                  "L": [inner.L[0], inner.L[-1]]})
    deeper = _itoo(inner, c - 1, o, s, trace)
    if deeper.kind == "FullOccultation":
        return ExtractionOutcome("FullOccultation", asterism=OrderedAsterism(g, deeper.asterism.S, deeper.asterism.L))
    return ExtractionOutcome("CyclePacking", cycles=(H,) + deeper.cycles)


def _fallback(a: OrderedAsterism, c: int, o: int, s: int, trace: list[dict],
              budget: int = 10 ** 6) -> ExtractionOutcome:
    """Direct search, used only when no carving validates.

    First c cycles from the perforation detector on G[V(a)], then a full
    (s, o)-occultation over ordered s-subsets of S and subpaths of L.
    """
    host = a.graph.induced_subgraph(a.vertices())
    verdict = is_perforated(host, c, o, budget)
    trace.append({"step": "fallback-detector", "verdict": verdict.status})
    if isinstance(verdict, NotPerforated):
        return ExtractionOutcome("CyclePacking", cycles=tuple(tuple(cy) for cy in verdict.witness))
    n = len(a.L)
    checked = 0
    for S in permutations(a.S, s):
        for p in range(n):
            for q in range(p + 2, n):
                checked += 1
                if checked > budget:
                    raise ExtractionError(f"fallback search exceeded {budget} candidates")
                cand = validate_asterism(a.graph, S, a.L[p:q + 1])
                if isinstance(cand, OrderedAsterism) and is_full_occultation(cand, o):
                    trace.append({"step": "fallback-search", "S": list(S), "L": [a.L[p], a.L[q]]})
                    return ExtractionOutcome("FullOccultation", asterism=cand)
    raise ExtractionError("no carving validates and neither direct search succeeded")


def _carve(a: OrderedAsterism, H: tuple[int, ...], z: int, S_new: Sequence[int], rp: int):
    """(y, route, asterism on S_new) with the new path inside the y-z route,
    anticomplete to H, or None.

    y = pi(r'+1) and its shortest route to z are tried first.  The route
    interior Q (u ~ y, v ~ z) loses u, and v plus its Q-neighbor when v is on
    H; an end that still sees S_new is then pulled inward.  Other routes and
    other y outside S_new follow, in pi order, until the validators accept.
    """
    g = a.graph
    Hs = set(H)
    ys = [a.S[rp]] + [w for w in a.S if w not in S_new and w not in (z, a.S[rp])]
    all_routes = routes(a)
    blockers = set()
    for x in S_new:
        blockers |= g.neighbors(x)
    for y in ys:
        cands = sorted((rt for rt in all_routes if set(rt.ends) == {y, z}), key=lambda rt: (rt.length, rt.span))
        for R in cands:
            Q = R.interior if R.ends[0] == y else R.interior[::-1]
            lo, hi = 1, len(Q) - (2 if Q[-1] in Hs else 1)
            while lo < hi and Q[lo] in blockers:
                lo += 1
            while hi > lo and Q[hi - 1] in blockers:
                hi -= 1
            L_new = Q[lo:hi]
            if len(L_new) < 3 or any(g.neighbors(v) & Hs for v in L_new):
                continue
            if R.ends[0] != y:
                L_new = L_new[::-1]
            sub_g = g.induced_subgraph(set(S_new) | set(L_new))
            inner = validate_asterism(sub_g, S_new, L_new)
            if isinstance(inner, Violation) or not (is_d_ample(inner, 2) and is_interrupted(inner)):
                continue
            return y, R, inner
    return None


# matchings

@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class VertexCover:
    vertices: tuple[int, ...]


def matching_or_cover(T: Graph, c: int) -> Matching | VertexCover:
    """Greedy maximal matching over sorted edges: c of its edges if it has
    that many, else all matched vertices (fewer than 2c; they cover T)."""
    if c < 1:
        raise ValueError("c must be >= 1")
    used: set[int] = set()
    M = []
    for u, v in T.edges:
        if u not in used and v not in used:
            M.append((u, v))
            used |= {u, v}
    if len(M) >= c:
        return Matching(tuple(M[:c]))
    return VertexCover(tuple(sorted(used)))


# cycle constructions

def gemini_to_cycles(gem: Gemini, c: int, o: int) -> list[tuple[int, ...]]:
    """c disjoint anticomplete cycles of length >= 4o+4 from a gemini of two
    2o-ample syzygies with at least 2c entries.

    H_j runs pi_1(2j-1) -> pi_1(2j) along L_1, over Q_{2j}, back along L_2
    from pi_2(2j) to pi_2(2j-1), and home over Q_{2j-1}; each L-leg is the
    shortest path inside G[V(s_i)].
    """
    g1, g2 = gem.g1, gem.g2
    g = g1.graph
    if c < 1 or o < 1:
        raise ExtractionError("need c, o >= 1")
    bad = validate_gemini(g, gem)
    if bad is not None:
        raise ExtractionError(f"not a gemini: {bad.clause} ({bad.detail})")
    if g1.s < 2 * c:
        raise ExtractionError(f"need a gemini with at least {2 * c} entries")
    for a in (g1, g2):
        if not is_syzygy(a):
            raise ExtractionError("both sides must be syzygies")
        if not is_d_ample(a, 2 * o):
            raise ExtractionError(f"both sides must be {2 * o}-ample")
    V1, V2 = g1.vertices(), g2.vertices()
    cycles = []
    for j in range(1, c + 1):
        i1, i2 = 2 * j - 1, 2 * j
        P1 = shortest_path_in(g, V1, g1.S[i1 - 1], g1.S[i2 - 1])
        P2 = shortest_path_in(g, V2, g2.S[i2 - 1], g2.S[i1 - 1])
        Qa, Qb = _oriented(gem.Q[i2 - 1], g1.S[i2 - 1]), _oriented(gem.Q[i1 - 1], g1.S[i1 - 1])
        seq = list(P1) + list(Qa[1:]) + list(P2[1:]) + list(Qb[::-1][1:])
        if seq[-1] == seq[0]:
            seq.pop()
        cycles.append(tuple(seq))
    for k, cyc in enumerate(cycles):
        if not is_induced_cycle(g, cyc) or len(cyc) < 4 * o + 4:
            raise ExtractionError(f"internal: H_{k + 1} is not an induced cycle of length >= {4 * o + 4}")
    bad = verify_cycle_packing(g, cycles, 4 * o + 2)
    if bad is not None:
        raise ExtractionError(f"internal: cycles are not a packing ({bad.clause})")
    return cycles


def _oriented(path: Sequence[int], start: int) -> tuple[int, ...]:
    path = tuple(path)
    return path if path[0] == start else path[::-1]


def build_transition_cycles(a1: OrderedAsterism, a2: OrderedAsterism,
                            matching: Sequence[tuple[int, int]], o: int) -> list[tuple[int, ...]]:
    """One cycle per matched pair xy: the certificate route of xy in T_{a1},
    then back through the certificate route in T_{a2}."""
    g = a1.graph
    if set(a1.S) != set(a2.S):
        raise ExtractionError("both asterisms need the same S")
    if set(a1.L) & set(a2.L) or not g.is_anticomplete(a1.L, a2.L):
        raise ExtractionError("L_1 and L_2 must be disjoint and anticomplete")
    for a in (a1, a2):
        if not is_d_ample(a, o + 2):
            raise ExtractionError(f"both asterisms must be {o + 2}-ample")
    flat = [v for e in matching for v in e]
    if len(set(flat)) != len(flat):
        raise ExtractionError("matching edges must be disjoint")
    T1, T2 = transition_graph(a1).certificates, transition_graph(a2).certificates
    cycles = []
    for x, y in matching:
        key = (min(x, y), max(x, y))
        if key not in T1 or key not in T2:
            raise ExtractionError(f"{x}{y} is not certified in both transition graphs")
        R1 = _oriented(T1[key].path, x)
        R2 = _oriented(T2[key].path, y)
        cycles.append(R1 + R2[1:-1])
    bad = verify_cycle_packing(g, cycles, 2 * o + 6)
    if bad is not None:
        raise ExtractionError(f"internal: transition cycles fail ({bad.clause}: {bad.detail})")
    return cycles
