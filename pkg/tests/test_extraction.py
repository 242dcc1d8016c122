import json

import pytest
from hypothesis import given, settings, strategies as st

from occult.asterism import (OrderedAsterism, is_cherry, is_d_ample, is_full_occultation, is_interrupted,
                             is_syzygy, maximal_extension, prefix, restrict, transition_graph)
from occult.detectors import NotPerforated, is_perforated, validate_constellation, verify_cycle_packing
from occult.extraction import (Clique, ExtractionError, Insufficient, Matching, StableSet, VertexCover,
                               asterism_to_syzygy_or_constellation, build_transition_cycles, cherry_extend,
                               gemini_to_cycles, interrupted_to_occultation, interval_split, matching_or_cover,
                               meager_bound, occultation_top)
from occult.generators import (ample_interrupted_asterism, constellation, gemini, occultation,
                               random_interrupted_asterism, random_meager_asterism, syzygy)
from occult.graph import Graph, is_induced_cycle

import oracles


# interval split

def test_three_disjoint_intervals():
    assert interval_split([(1, 2), (3, 4), (5, 6)], 3, 3) == StableSet((0, 1, 2))


def test_intervals_through_zero():
    res = interval_split([(-3, 0), (0, 4), (-1, 1), (0, 0)], 2, 4)
    assert isinstance(res, Clique) and res.point == 0 and len(res.ids) == 4


def test_interval_split_rejects_bad_input():
    with pytest.raises(ValueError):
        interval_split([(2, 1)], 1, 1)
    with pytest.raises(ValueError):
        interval_split([(0, 1)], -1, 1)


def test_interval_split_insufficient():
    res = interval_split([(0, 1), (1, 2)], 2, 3)
    assert res == Insufficient(1, 2)


def _check_split(F, a, b, res):
    if isinstance(res, StableSet):
        ivs = [F[i] for i in res.ids]
        assert len(ivs) == a and all(p[1] < q[0] for p, q in zip(ivs, ivs[1:]))
    elif isinstance(res, Clique):
        assert len(res.ids) == b
        assert all(F[i][0] <= res.point <= F[i][1] for i in res.ids)
    else:
        assert res.max_stable == oracles.interval_mis(F) < a
        assert res.max_clique == oracles.interval_max_clique(F) < b


@given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 6)).map(lambda t: (t[0], t[0] + t[1])),
                max_size=12),
       st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=200, deadline=None)
def test_interval_split_against_oracle(F, a, b):
    res = interval_split(F, a, b)
    _check_split(F, a, b, res)
    if len(F) >= a * b:
        assert not isinstance(res, Insufficient)


# syzygy or constellation

def test_meager_bound():
    assert meager_bound(2, 2, 1, 1) == 4
    assert meager_bound(3, 1, 5, 2) == 5


def test_syzygy_input_gives_syzygy():
    g, a = syzygy(4, seed=1)
    out = asterism_to_syzygy_or_constellation(a, 4, 2, 1, 1)
    assert out.kind == "Syzygy" and set(out.asterism.S) == set(a.S)
    assert is_syzygy(out.asterism)


def test_non_meager_rejected():
    g, a = occultation(2)
    g2 = Graph(g.vertices, list(g.edges) + [(a.S[1], a.L[2])])  # v2 now seen by both
    with pytest.raises(ExtractionError):
        asterism_to_syzygy_or_constellation(OrderedAsterism(g2, a.S, a.L), 2, 2, 1, 1)


@pytest.mark.parametrize("seed", range(20))
def test_one_meager_four_asterism(seed):
    g, a = random_meager_asterism(4, 1, seed=seed)
    out = asterism_to_syzygy_or_constellation(a, 2, 2, 1, 1)
    assert out.kind in ("Syzygy", "PlainConstellation")
    if out.kind == "Syzygy":
        assert is_syzygy(out.asterism) and out.asterism.s == 2
    else:
        c = out.constellation
        assert validate_constellation(g, c.S, c.paths) is None and len(c.paths) == 2


def test_below_bound_may_be_insufficient():
    g, a = occultation(1)
    out = asterism_to_syzygy_or_constellation(a, 2, 1, 3, 1)
    assert out.kind == "Insufficient" and out.trace


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2), st.integers(1, 2))
@settings(max_examples=120, deadline=None)
def test_syzygy_or_constellation_at_bound(seed, a, l, s, d):
    n = meager_bound(a, l, s, d)
    if n > 24:
        return
    g, ast = random_meager_asterism(n, d, seed=seed)
    out = asterism_to_syzygy_or_constellation(ast, a, l, s, d)
    assert out.kind in ("Syzygy", "PlainConstellation")
    if out.kind == "Syzygy":
        assert out.asterism.s == a and is_syzygy(out.asterism)
    else:
        c = out.constellation
        assert len(c.S) == s and len(c.paths) == l
        assert validate_constellation(g, c.S, c.paths) is None
    json.dumps(out.to_dict())


# cherries

def test_cherry_extend_on_ample_fixture():
    g, a = ample_interrupted_asterism(3, 2)
    inner = prefix(a, 2)
    out = cherry_extend(a, inner, a.S[2])
    assert out == a and is_d_ample(out, 2) and is_interrupted(out)


def test_cherry_extend_rejects_non_two_ample():
    g, a = occultation(3)
    with pytest.raises(ExtractionError, match="2-ample"):
        cherry_extend(a, prefix(a, 2), a.S[2])


def test_cherry_extend_requires_candidate():
    g, a = ample_interrupted_asterism(3, 2)
    short = OrderedAsterism(g, a.S[:1], a.L[1:-1])
    with pytest.raises(ExtractionError, match="candidate"):
        cherry_extend(a, short, a.S[1])


@pytest.mark.parametrize("seed", range(10))
def test_cherry_extension_keeps_interruption(seed):
    g, a = random_interrupted_asterism(4, seed=seed)
    inner = maximal_extension(a, prefix(a, 2))
    x = a.S[2]
    assert is_cherry(g, restrict(a, inner.S), x)
    out = cherry_extend(a, inner, x)
    assert is_interrupted(out) == is_interrupted(inner)
    assert out.S[-1] == x


# occultation_top

def test_occultation_top_base_case():
    g, a = ample_interrupted_asterism(3, 2)
    empty = OrderedAsterism(g, (), a.L[:3])
    out = occultation_top(a, 2, 1, 1, empty)
    assert out.S == (a.S[1],) and is_full_occultation(out, 1)


@pytest.mark.parametrize("s", [2, 3, 4])
def test_occultation_top_on_ample_fixtures(s):
    g, a = ample_interrupted_asterism(s, 2, seed=s)
    prior = prefix(a, s - 1)
    out = occultation_top(a, s, s - 1, 1, prior)
    assert out.S[-1] == a.S[s - 1]
    assert out.s == s and is_full_occultation(out, 1)


def test_occultation_top_rejects_bad_indices():
    g, a = ample_interrupted_asterism(3, 2)
    with pytest.raises(ExtractionError):
        occultation_top(a, 1, 1, 1, prefix(a, 0))


# interrupted -> occultation

@pytest.mark.parametrize("s", [0, 1])
def test_trivial_s_returns_prefix(s):
    g, a = random_interrupted_asterism(3, seed=2)
    out = interrupted_to_occultation(g, a, 2, 1, s)
    assert out.kind == "FullOccultation"
    assert out.asterism.S == a.S[:s]


def test_preconditions():
    g, a = occultation(3)
    with pytest.raises(ExtractionError, match="2-ample"):
        interrupted_to_occultation(g, a, 1, 1, 2)
    g, a = ample_interrupted_asterism(2, 2)
    with pytest.raises(ExtractionError, match="s\\^c"):
        interrupted_to_occultation(g, a, 2, 1, 2)


def test_single_cycle_outcome_on_general_host():
    # with c = 1 any induced cycle of length >= o+2 already refutes
    # (1, o)-perforation, so a packing is a legitimate answer
    g, a = random_interrupted_asterism(3, seed=0)
    out = interrupted_to_occultation(g, a, 1, 1, 3)
    assert out.kind == "CyclePacking" and len(out.cycles) == 1
    assert verify_cycle_packing(g, out.cycles, 1) is None
    assert isinstance(is_perforated(g, 1, 1), NotPerforated)


def test_two_cycle_outcome():
    g, a = random_interrupted_asterism(4, seed=34)
    out = interrupted_to_occultation(g, a, 2, 1, 2)
    assert out.kind == "CyclePacking" and len(out.cycles) == 2
    assert oracles.is_packing(g, out.cycles, 1)
    assert out.trace


@pytest.mark.parametrize("seed", range(25))
def test_outcomes_always_validate(seed):
    g, a = random_interrupted_asterism(4, seed=seed)
    for s, c in ((2, 1), (2, 2), (3, 1)):
        out = interrupted_to_occultation(g, a, c, 1, s)
        if out.kind == "FullOccultation":
            assert oracles.is_full_occultation(g, out.asterism.S, out.asterism.L, 1)
            assert set(out.asterism.S) <= set(a.S)
        else:
            assert len(out.cycles) == c and oracles.is_packing(g, out.cycles, 1)
            assert isinstance(is_perforated(g, c, 1), NotPerforated)


# matching or cover

def test_perfect_matching():
    T = Graph(range(6), [(0, 1), (2, 3), (4, 5)])
    assert matching_or_cover(T, 3) == Matching(((0, 1), (2, 3), (4, 5)))


def test_star_gives_cover():
    star = Graph(range(6), [(0, i) for i in range(1, 6)])
    res = matching_or_cover(star, 2)
    assert isinstance(res, VertexCover) and len(res.vertices) == 2


@st.composite
def small_graphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=25)) if pairs else []
    return Graph(range(n), edges)


@given(small_graphs(), st.integers(1, 5))
@settings(max_examples=150, deadline=None)
def test_matching_or_cover_laws(T, c):
    res = matching_or_cover(T, c)
    nu = oracles.max_matching_size(T)
    if isinstance(res, Matching):
        flat = [v for e in res.edges for v in e]
        assert len(res.edges) == c and len(set(flat)) == len(flat)
        assert all(T.has_edge(u, v) for u, v in res.edges)
    else:
        cover = set(res.vertices)
        assert len(cover) < 2 * c and len(cover) <= 2 * nu
        assert all(u in cover or v in cover for u, v in T.edges)
        assert nu < 2 * c  # a maximal matching has at least nu/2 edges


# gemini cycles

@pytest.mark.parametrize("seed", range(8))
def test_gemini_two_cycles(seed):
    g, gem = gemini(4, 1, seed=seed)
    cycles = gemini_to_cycles(gem, 2, 1)
    assert len(cycles) == 2 and all(len(c) >= 8 for c in cycles)
    assert all(is_induced_cycle(g, c) for c in cycles)
    assert oracles.is_packing(g, cycles, 6)


def test_gemini_single_cycle():
    g, gem = gemini(2, 2, seed=3)
    (cyc,) = gemini_to_cycles(gem, 1, 2)
    assert len(cyc) >= 12 and is_induced_cycle(g, cyc)


def test_gemini_too_small():
    g, gem = gemini(2, 1)
    with pytest.raises(ExtractionError):
        gemini_to_cycles(gem, 2, 1)


# transition cycles

def _two_path_fixture(seed):
    g, c = constellation(4, 2, lengths=2, seed=seed)
    a1 = OrderedAsterism(g, c.S, c.paths[0])
    a2 = OrderedAsterism(g, c.S, c.paths[1])
    return g, a1, a2


def test_transition_cycles_from_matching():
    g, a1, a2 = _two_path_fixture(0)
    common = set(transition_graph(a1).certificates) & set(transition_graph(a2).certificates)
    res = matching_or_cover(Graph(a1.S, sorted(common)), 2)
    assert isinstance(res, Matching)
    cycles = build_transition_cycles(a1, a2, res.edges, 1)
    assert len(cycles) == 2 and all(len(c) >= 10 for c in cycles)
    assert oracles.is_packing(g, cycles, 1)


def test_single_transition_cycle_length():
    g, a1, a2 = _two_path_fixture(0)
    T1, T2 = transition_graph(a1).certificates, transition_graph(a2).certificates
    edge = sorted(set(T1) & set(T2))[0]
    (cyc,) = build_transition_cycles(a1, a2, [edge], 1)
    assert len(cyc) == T1[edge].length + T2[edge].length


def test_uncertified_edge_rejected():
    g, a1, a2 = _two_path_fixture(1)  # no common transition edges for this seed
    with pytest.raises(ExtractionError, match="certified"):
        build_transition_cycles(a1, a2, [(0, 1)], 1)
