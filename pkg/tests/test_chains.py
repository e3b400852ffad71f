import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import as_sets, complexes
from polyjoin.chains import (BasedChainComplex, GradedRanks, homology, induced_map, pp_triangulated, reduced_chains,
                             simplicial_homology, staircase_product, suspend, tensor_suspend)
from polyjoin.complex import GroundSet, SimplicialPair, boundary, build, simplex
from polyjoin.errors import UnsupportedRingError

RP2 = build("facets", GroundSet.range(6), [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                                           [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])


def _pair(n):
    g = GroundSet.range(n)
    return SimplicialPair(simplex(g), boundary(g))


def test_rp2_oracle_is_what_we_think():
    assert oracles.integer_homology(as_sets(RP2)) == ({}, {1: [2]})


def test_homology_examples():
    assert homology(reduced_chains(boundary(GroundSet.range(4)), "Z")) == GradedRanks({2: 1})
    assert homology(reduced_chains(build("empty", GroundSet.range(2)), "Z")) == GradedRanks({-1: 1})
    assert homology(reduced_chains(RP2, "Z")) == GradedRanks({}, {1: [2]})
    assert simplicial_homology(RP2, "F2") == GradedRanks({1: 1, 2: 1})
    assert simplicial_homology(RP2, "Q").is_zero


def test_reduced_chains_examples():
    C = reduced_chains(build("empty", GroundSet.range(2)))
    assert C.chain_ranks() == {-1: 1} and not C.boundaries
    V = reduced_chains(build("void", GroundSet.range(2)))
    assert V.size() == 0 and homology(V).is_zero
    C = reduced_chains(boundary(GroundSet.range(3)))
    C.check_dd()
    assert C.chain_ranks() == {-1: 1, 0: 3, 1: 3}


def test_induced_map_examples():
    f = induced_map(_pair(3))
    assert f.source == GradedRanks({1: 1}) and f.target.is_zero
    assert f.image().is_zero
    g = GroundSet.range(3)
    X = build("facets", g, [[1, 2], [3]])
    A = build("facets", g, [[1], [2], [3]])
    f = induced_map(SimplicialPair(X, A))
    assert f.source == GradedRanks({0: 2}) and f.target == GradedRanks({0: 1})
    assert f.rank(0) == 1
    K = boundary(GroundSet.range(4))
    f = induced_map(SimplicialPair(K, K), "F3")
    assert f.matrices[2] == [[1]]
    with pytest.raises(UnsupportedRingError):
        induced_map(SimplicialPair(K, K), "Z")


def test_tensor_examples():
    C = reduced_chains(boundary(GroundSet.range(3)), "Z")
    unit = BasedChainComplex({0: ["*"]}, {}, "Z")
    T = tensor_suspend([C, unit])
    assert T.chain_ranks() == C.chain_ranks()
    assert homology(T) == homology(C)
    assert suspend(reduced_chains(build("empty", GroundSet.range(1))), 1).chain_ranks() == {0: 1}


def test_tensor_kunneth_with_torsion():
    C = reduced_chains(RP2, "Z")
    T = tensor_suspend([C, C])
    T.check_dd()
    # Z/2 (x) Z/2 in degree 2 and Tor in degree 3
    assert homology(T) == GradedRanks({}, {2: [2], 3: [2]})
    assert homology(T) == homology(C).convolve(homology(C))


def test_staircase_examples():
    edge = simplex(GroundSet.range(2))
    sq = staircase_product([edge, edge])
    assert len(sq.facets) == 2 and simplicial_homology(sq, "Z").is_zero
    circle = boundary(GroundSet.range(3))
    T = staircase_product([circle, circle])
    assert simplicial_homology(T, "Z") == GradedRanks({1: 2, 2: 1})
    two = staircase_product([boundary(GroundSet.range(2)), circle])
    assert simplicial_homology(two, "Z") == GradedRanks({0: 1, 1: 2})
    assert staircase_product([circle, build("void", GroundSet.range(1))]).is_void


def test_moment_angle_s3():
    K = boundary(GroundSet.range(2))
    Z = pp_triangulated(K, [_pair(3), _pair(3)])
    assert simplicial_homology(Z, "Z", reduced=False) == GradedRanks({0: 1, 3: 1})


@given(complexes(max_n=6), st.sampled_from([0, 2, 3]))
def test_field_homology_matches_oracle(K, p):
    ring = {0: "Q", 2: "F2", 3: "F3"}[p]
    assert simplicial_homology(K, ring).betti == oracles.reduced_betti(as_sets(K), p)
    assert simplicial_homology(K, ring, reduced=False).betti == oracles.unreduced_betti(as_sets(K), p)


@given(complexes(max_n=6))
def test_integer_homology_matches_oracle(K):
    free, tors = oracles.integer_homology(as_sets(K))
    H = simplicial_homology(K, "Z")
    assert H.betti == free and {d: list(v) for d, v in H.torsion.items()} == tors


@given(complexes(min_n=1, max_n=4), complexes(min_n=1, max_n=4))
def test_staircase_kunneth(K, L):
    if K.is_void or L.is_void or K.faces == {0} or L.faces == {0}:
        return
    P = staircase_product([K, L])
    want = simplicial_homology(K, "Q", reduced=False).convolve(simplicial_homology(L, "Q", reduced=False))
    assert simplicial_homology(P, "Q", reduced=False) == want


@given(complexes(max_n=4), complexes(max_n=4))
def test_tensor_of_reduced_chains(K, L):
    T = tensor_suspend([reduced_chains(K, "Z"), reduced_chains(L, "Z")])
    T.check_dd()
    want = simplicial_homology(K, "Z").convolve(simplicial_homology(L, "Z"))
    assert homology(T) == want
