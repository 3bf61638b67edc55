from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from lrcavail.availability import (
    availability_profile,
    check_exact_covering,
    component_rank_bound,
    find_repair_groups,
    intersection_graph,
    low_weight_dual_words,
    max_availability,
    max_disjoint_subsets,
    rosenfeld_lower_bound,
    verify_availability,
)
from lrcavail.constructions import (
    CoveringSystem,
    complete_graph,
    fano_covering_system,
    platonic,
    polyhedron_code,
    simplex_code,
    vertex_star_system,
)
from lrcavail.errors import GuardExceeded, LRCError, PreconditionViolated
from lrcavail.gf2 import BitMatrix, code_from_generator
from lrcavail.search import disjoint_union, enumerate_exact_covering_systems


def code(name):
    return polyhedron_code(platonic(name))[0]


def repetition(n):
    return code_from_generator(BitMatrix.from_strings(["1" * n]))


def even_weight(n):
    return code_from_generator(BitMatrix.from_strings(["1" + "0" * (i - 1) + "1" + "0" * (n - i - 1) for i in range(1, n)]))


def systems(*blocks_and_n):
    *blocks, n = blocks_and_n
    return CoveringSystem(n, tuple(frozenset(b) for b in blocks))


K4_STARS = vertex_star_system(complete_graph(4))
FANO = fano_covering_system()


def brute_max_availability(c, i, r):
    """Largest family of dual words through i, weight <= r+1, pairwise meeting only at i."""
    n = c.n
    ibit = 1 << (n - i)
    words = [w for w in brute.orthogonal_complement(c.generator.rows, n)
             if w & ibit and bin(w).count("1") <= r + 1]
    for size in range(len(words), 0, -1):
        for combo in combinations(words, size):
            if all(a & b == ibit for a, b in combinations(combo, 2)):
                return size
    return 0


# -- repair groups -----------------------------------------------------------


def test_simplex_certificate_for_bit_one():
    cert = find_repair_groups(simplex_code(3), 1, 2, 3)
    assert cert is not None
    assert [sorted(g.members) for g in cert.groups] == [[2, 3], [4, 5], [6, 7]]
    assert cert.validate(simplex_code(3))
    assert cert.locality == 2 and cert.t == 3


def test_tetrahedron_groups_come_from_endpoint_stars():
    c = code("tetrahedron")
    g = platonic("tetrahedron").graph
    for i in range(1, 7):
        cert = find_repair_groups(c, i, 2, 2)
        assert cert is not None and cert.validate(c)
        stars = {frozenset(g.incident_edges(v)) - {i} for v in g.edges[i - 1]}
        assert {g_.members for g_ in cert.groups} == stars


def test_full_space_has_no_repair_groups():
    full = code_from_generator(BitMatrix.identity(3))
    assert find_repair_groups(full, 2, 2, 1) is None


@pytest.mark.parametrize("name, r, t", [("octahedron", 3, 2), ("icosahedron", 4, 2)])
def test_table_availability(name, r, t):
    rep = verify_availability(code(name), r, t)
    assert rep.ok and len(rep.per_bit) == code(name).n
    assert all(c.validate(code(name)) for c in rep.certificates)


def test_simplex_fails_four_groups():
    rep = verify_availability(simplex_code(3), 2, 4)
    assert not rep.ok and rep.failing_bits


def test_octahedron_needs_locality_three():
    assert not verify_availability(code("octahedron"), 2, 2).ok


def test_parallel_verification_matches_serial():
    c = code("cube")
    assert verify_availability(c, 2, 2, jobs=2).to_json() == verify_availability(c, 2, 2).to_json()


def test_profiles():
    assert availability_profile(simplex_code(3), 2) == [3] * 7
    assert availability_profile(code("dodecahedron"), 2) == [2] * 30
    assert availability_profile(repetition(3), 1) == [2, 2, 2]
    # the even-weight code's only nonzero dual word is 111
    assert availability_profile(even_weight(3), 1) == [0, 0, 0]
    assert availability_profile(even_weight(3), 2) == [1, 1, 1]


def test_profile_can_exceed_n_minus_1_over_r():
    # groups smaller than r fit more often than (n-1)/r suggests
    assert availability_profile(repetition(3), 2) == [2, 2, 2]
    assert max_availability(repetition(5), 1, 3) == 4


def test_simplex_profile_m4():
    # 7 lines through each point of PG(3,2)
    assert availability_profile(simplex_code(4), 2) == [7] * 15


def test_degenerate_arguments():
    c = simplex_code(3)
    with pytest.raises(LRCError):
        find_repair_groups(c, 8, 2, 1)
    with pytest.raises(LRCError):
        find_repair_groups(c, 0, 2, 1)
    with pytest.raises(LRCError):
        verify_availability(c, 7, 1)
    with pytest.raises(LRCError):
        verify_availability(c, 2, 0)
    with pytest.raises(LRCError):
        verify_availability(c, 0, 1)


def test_low_weight_words_by_both_strategies_agree():
    c = code("dodecahedron")
    words = low_weight_dual_words(c, 3)
    assert len(words) == 20
    assert all(bin(w).count("1") == 3 for w in words)


def test_low_weight_guard(monkeypatch):
    from lrcavail import availability
    monkeypatch.setattr(availability, "DUAL_ENUMERATION_GUARD", 2)
    monkeypatch.setattr(availability, "WEIGHT_SEARCH_GUARD", 2)
    low_weight_dual_words.cache_clear()
    try:
        with pytest.raises(GuardExceeded):
            low_weight_dual_words(simplex_code(3), 3)
    finally:
        low_weight_dual_words.cache_clear()


@st.composite
def small_codes(draw):
    n = draw(st.integers(3, 8))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=n))
    return code_from_generator(BitMatrix(n, tuple(rows)))


@settings(max_examples=60, deadline=None)
@given(small_codes(), st.data())
def test_max_availability_matches_brute_force(c, data):
    i = data.draw(st.integers(1, c.n))
    r = data.draw(st.integers(1, min(3, c.n - 1)))
    assert max_availability(c, i, r) == brute_max_availability(c, i, r)


@settings(max_examples=60, deadline=None)
@given(small_codes(), st.data())
def test_monotone_in_t_and_r(c, data):
    r = data.draw(st.integers(1, c.n - 2))
    t = data.draw(st.integers(1, 3))
    if verify_availability(c, r, t).ok:
        for t2 in range(1, t):
            assert verify_availability(c, r, t2).ok
        assert verify_availability(c, r + 1, t).ok
    for cert in verify_availability(c, r, t).certificates:
        if cert is not None:
            assert cert.validate(c)


# -- exact covering ----------------------------------------------------------


def test_exact_covering_examples():
    rep = check_exact_covering(FANO, 2, 3)
    assert rep.valid and rep.N == 7 and rep.n == 7
    rep = check_exact_covering(K4_STARS, 2, 2)
    assert rep.valid and rep.N == 4
    bad = check_exact_covering(systems({1, 2, 3}, {1, 2, 3}, 3), 2, 2)
    assert not bad.valid
    assert ("pair-intersection", (1, 2)) in bad.violations


def test_exact_covering_reports_each_violation_kind():
    s = systems({1, 2}, {2, 3, 4}, 4)
    kinds = {k for k, _ in check_exact_covering(s, 1, 2).violations}
    assert {"row-weight", "column-weight", "count"} <= kinds


# -- intersection graphs -----------------------------------------------------


def test_intersection_graph_examples():
    g = intersection_graph(K4_STARS)
    assert g.edge_count == 6 and len(g.components) == 1 and g.regular_degree() == 3
    f = intersection_graph(FANO)
    assert f.edge_count == 21 and len(f.components) == 1
    two = intersection_graph(systems({1, 2, 3}, {4, 5, 6}, 6))
    assert two.edge_count == 0 and len(two.components) == 2


def test_component_rank_bound_examples():
    b = component_rank_bound(K4_STARS)
    assert (b.bound, b.rank) == (3, 3)
    b = component_rank_bound(disjoint_union([K4_STARS, K4_STARS]))
    assert (b.bound, b.rank) == (6, 6)
    hexagon = systems(*[{i, i % 6 + 1} for i in range(1, 7)], 6)
    b = component_rank_bound(hexagon)
    assert (b.bound, b.rank) == (5, 5)


def test_component_rank_bound_precondition():
    with pytest.raises(PreconditionViolated):
        component_rank_bound(FANO)


def test_max_disjoint_examples():
    assert max_disjoint_subsets(FANO)[0] == 1
    count, witness = max_disjoint_subsets(disjoint_union([FANO, FANO]))
    assert count == 2 and len(witness) == 2
    assert max_disjoint_subsets(systems({1, 2, 3}, {4, 5, 6}, 6)) == (2, (1, 2))


def test_max_disjoint_guard():
    with pytest.raises(GuardExceeded):
        max_disjoint_subsets(FANO, guard=6)


def test_rosenfeld_bound():
    g = intersection_graph(FANO)
    assert rosenfeld_lower_bound(g) == 1
    assert rosenfeld_lower_bound(intersection_graph(systems({1, 2}, {2, 3, 4}, 4))) == 1
    assert rosenfeld_lower_bound(intersection_graph(systems({1, 2}, {2, 3}, {3, 4}, 4))) is None


@st.composite
def subset_systems(draw):
    n = draw(st.integers(2, 9))
    subsets = draw(st.lists(st.frozensets(st.integers(1, n), min_size=1), min_size=1, max_size=12))
    return CoveringSystem(n, tuple(subsets))


@settings(max_examples=100, deadline=None)
@given(subset_systems())
def test_max_disjoint_matches_brute_force(s):
    count, witness = max_disjoint_subsets(s)
    chosen = [s.subsets[i - 1] for i in witness]
    assert all(not a & b for a, b in combinations(chosen, 2)) and len(chosen) == count
    best = max(k for k in range(s.size + 1)
               for combo in combinations(s.subsets, k)
               if all(not a & b for a, b in combinations(combo, 2)))
    assert count == best
    rb = rosenfeld_lower_bound(intersection_graph(s))
    if rb is not None:
        assert count >= rb


# -- invariants on enumerated t = 2 systems ----------------------------------


@pytest.mark.parametrize("n, r", [(6, 2), (9, 2), (6, 1), (8, 1), (10, 4), (10, 3)])
def test_t2_systems_structure(n, r):
    for s in enumerate_exact_covering_systems(n, r, 2):
        g = intersection_graph(s)
        assert g.regular_degree() == r + 1
        assert all(len(c) >= r + 2 for c in g.components)
        b = component_rank_bound(s)
        assert b.bound <= b.rank
        # exactly one dependency per component when every point is covered twice
        assert b.bound == b.rank
