import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import as_sets, complexes
from polyjoin.chains import GradedRanks, homology
from polyjoin.complex import GroundSet, IndexPair, SimplicialComplex, SimplicialPair, boundary, build, dual, simplex
from polyjoin.errors import InvalidInputError, ResourceLimitError
from polyjoin.hochster import (alexander_dual_check, character_ranks, sigma_omega_table, split_status,
                               total_chain_block, total_chain_complex)

TWO_POINTS = build("facets", GroundSet.range(2), [[1], [2]])
G6 = GroundSet.range(6)
RP2_FACETS = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
              [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]]


def test_table_of_simplex():
    T = sigma_omega_table(simplex(GroundSet.range(3)))
    nz = T.nonzero()
    assert set(nz) == {(s, 0) for s in range(8)}
    assert all(h == GradedRanks({0: 1}) for h in nz.values())


def test_table_two_points():
    T = sigma_omega_table(TWO_POINTS)
    assert T[(0, 0b11)] == GradedRanks({1: 1})
    for s in (0, 1, 2):
        assert T[(s, 0)] == GradedRanks({0: 1})
    assert T[(0b11, 0)].is_zero


def test_table_family_r_no_ghosts():
    K = boundary(GroundSet.range(4))
    T = sigma_omega_table(K, family="R")
    assert all(s == 0 for s, _ in T.nonzero())
    for (s, w), h in T.nonzero().items():
        if w:
            assert all(d > 1 for d in h.degrees())


def test_table_limits():
    with pytest.raises(ResourceLimitError):
        sigma_omega_table(build("empty", GroundSet.range(13)))
    K = build("empty", GroundSet.range(13))
    T = sigma_omega_table(K, pair_filter=[IndexPair(frozenset(), frozenset({1, 2}))])
    assert len(list(T.items())) == 1
    with pytest.raises(InvalidInputError):
        sigma_omega_table(K, family="Y", pair_filter=lambda p: False)


def test_character_examples():
    g3 = GroundSet.range(3)
    c = character_ranks(SimplicialPair(simplex(g3), boundary(g3)))
    assert c.gamma == GradedRanks({1: 1}) and c.eta.is_zero and c.alpha.is_zero
    K = boundary(GroundSet.range(4))
    c = character_ranks(SimplicialPair(K, K))
    assert c.alpha.is_zero and c.gamma.is_zero and c.eta == GradedRanks({2: 1})
    skel = SimplicialComplex(K.ground, [f for f in K.faces if bin(f).count("1") <= 2])
    c = character_ranks(SimplicialPair(K, skel))
    assert c.source == GradedRanks({1: 3}) and c.target == GradedRanks({2: 1})
    assert c.eta.is_zero and c.gamma == GradedRanks({1: 3}) and c.alpha == GradedRanks({2: 1})


def test_split_examples():
    g3 = GroundSet.range(3)
    assert split_status(SimplicialPair(simplex(g3), boundary(g3))).verdict == "split"
    # Moebius band with its boundary 5-cycle: the circle wraps twice
    g5 = GroundSet.range(5)
    band = build("facets", g5, [[i % 5 + 1, (i + 1) % 5 + 1, (i + 2) % 5 + 1] for i in range(5)])
    rim = build("facets", g5, [[i % 5 + 1, (i + 2) % 5 + 1] for i in range(5)])
    s = split_status(SimplicialPair(band, rim))
    assert s.verdict == "not_split" and s.witness == 2 and s.degree == 1
    cone = build("facets", GroundSet.range(7), [f + [7] for f in RP2_FACETS])
    rp2 = build("facets", GroundSet.range(7), RP2_FACETS)
    assert split_status(SimplicialPair(cone, rp2)).verdict == "undetermined"
    total = split_status(SimplicialPair(simplex(g3), boundary(g3)), mode="total")
    assert len(total) == 27 and all(total.values())


def test_alexander_examples():
    v = alexander_dual_check(TWO_POINTS, pairs=[(0, 0b11)])
    assert v.passed
    for m in range(1, 6):
        assert alexander_dual_check(boundary(GroundSet.range(m)))
    with pytest.raises(InvalidInputError):
        alexander_dual_check(TWO_POINTS, pairs=[(1, 0)])


@given(complexes(max_n=5), st.data())
def test_table_matches_oracle(K, data):
    T = sigma_omega_table(K, "F2")
    (s, w), h = data.draw(st.sampled_from(sorted(T.entries.items())))
    sub = oracles.restriction(as_sets(K), K.ground.vertices(s), K.ground.vertices(w))
    assert h.betti == {d + 1: r for d, r in oracles.reduced_betti(sub, 2).items()}


@given(complexes(min_n=1, max_n=6))
def test_alexander_duality_random(K):
    assert alexander_dual_check(K)


@given(complexes(min_n=1, max_n=5))
def test_alexander_by_oracle(K):
    Kd = as_sets(dual(K))
    full = frozenset(K.ground.universe)
    for s in oracles.powerset(full):
        for w in oracles.powerset(full - s):
            if not w:
                continue
            lhs = oracles.reduced_betti(oracles.restriction(as_sets(K), s, w))
            rhs = oracles.reduced_betti(oracles.restriction(Kd, full - s - w, w))
            assert lhs == {len(w) - j - 3: r for j, r in rhs.items()}


@given(complexes(max_n=4))
def test_total_chain_blocks(K):
    T = sigma_omega_table(K, "Z")
    for (s, w), h in T.entries.items():
        C = total_chain_block(K, s, w, "Z")
        C.check_dd()
        assert homology(C) == h
    assert homology(total_chain_complex(K, "Z")) == T.total()
