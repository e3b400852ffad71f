import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes, complexes_on
from polyjoin.chains import GradedRanks, simplicial_homology
from polyjoin.complex import GroundSet, SimplicialPair, boundary, build, dual, simplex
from polyjoin.duality import (SpherePairSpec, arrangement_complement, decomposition_55, duality_check_56,
                              oracle_compare_55, pairing_rows, sphere_pair_betti)
from polyjoin.errors import InvalidInputError, UnsupportedRingError

TWO_POINTS = boundary(GroundSet.range(2))
S2S0 = SpherePairSpec(((1, 0), (1, 0)))


def _disc(n):
    g = GroundSet.range(n)
    return SimplicialPair(simplex(g), boundary(g))


def _kunneth(parts):
    out = GradedRanks({0: 1})
    for p in parts:
        out = out.convolve(simplicial_homology(p, "Q", reduced=False))
    return out


def test_spec_parsing():
    assert SpherePairSpec.parse("1,0;2,1").entries == ((1, 0), (2, 1))
    assert SpherePairSpec.from_json([[1, 0]]).to_json() == [[1, 0]]
    assert S2S0.r == 4 and S2S0.complement() == S2S0.complement().complement().complement()
    assert SpherePairSpec(((3, 1),)).complement().entries == ((3, 2),)
    for bad in ("1,2", "a,b", "1"):
        with pytest.raises(InvalidInputError):
            SpherePairSpec.parse(bad)


def test_realization_is_sphere_pair():
    for r, q in [(1, 0), (2, 1), (3, 0)]:
        (p,) = SpherePairSpec(((r, q),)).realization()
        assert simplicial_homology(p.total) == GradedRanks({r + 1: 1})
        assert simplicial_homology(p.sub) == GradedRanks({q: 1})


def test_sphere_pair_example():
    M, Mc = sphere_pair_betti(TWO_POINTS, S2S0)
    assert M.hat == GradedRanks({0: 1, 2: 2})
    assert M.bar == GradedRanks({1: 1, 2: 2})
    assert M.total == GradedRanks({0: 1, 1: 1, 2: 4})
    dec = decomposition_55(TWO_POINTS, S2S0.realization())
    assert dec.hat == M.hat and dec.bar == M.bar
    v = oracle_compare_55(TWO_POINTS, S2S0.realization())
    assert v and v.details["oracle"]["betti"] == {"0": 1, "1": 1, "2": 4}


def test_only_empty_face():
    K = build("empty", GroundSet.range(2))
    M, _ = sphere_pair_betti(K, S2S0)
    assert M.hat == GradedRanks({0: 1})
    # bar collects (empty, omega) terms only: A product S^0 x S^0 has H_0 = 4
    assert M.total == GradedRanks({0: 4})
    ps = S2S0.realization()
    assert decomposition_55(K, ps).total == _kunneth([p.sub for p in ps])


def test_decomposition_of_simplex():
    K = simplex(GroundSet.range(2))
    ps = [_disc(3), SpherePairSpec(((1, 0),)).realization()[0]]
    dec = decomposition_55(K, ps)
    assert dec.bar.is_zero
    assert dec.hat == _kunneth([p.total for p in ps])
    assert oracle_compare_55(K, ps)


def test_moment_angle_s3():
    v = oracle_compare_55(TWO_POINTS, [_disc(3), _disc(3)])
    assert v and v.details["oracle"]["betti"] == {"0": 1, "3": 1}


@pytest.mark.parametrize("n", [1, 2])
def test_odd_sphere_duality(n):
    spec = SpherePairSpec(((2 * n, n), (2 * n, n)))
    assert spec.complement() == spec
    M, _ = sphere_pair_betti(TWO_POINTS, spec)
    Md, _ = sphere_pair_betti(dual(TWO_POINTS), spec)
    top = (2 * n + 1) * 2
    for p in range(top + 1):
        assert M.bar[p] == Md.bar[top - p - 1]


def test_duality_examples():
    assert duality_check_56(TWO_POINTS, S2S0)
    for m in (2, 3):
        full = GroundSet.range(m)
        K = simplex(full)
        K = type(K)(full, [f for f in K.faces if f != full.full])
        for spec in ([(1, 0)] * m, [(2, 1)] * m, [(3, k % 4) for k in range(m)]):
            assert duality_check_56(K, SpherePairSpec(tuple(spec)))


def test_pairing_rows():
    M, Mc = sphere_pair_betti(TWO_POINTS, S2S0)
    rows = pairing_rows(M, Mc, S2S0.r)
    for row in rows:
        assert row["bar_M"] == row["bar_Mc_paired"]
        assert row["paired_degree"] == S2S0.r - row["degree"] - 1


def test_field_only():
    with pytest.raises(UnsupportedRingError):
        decomposition_55(TWO_POINTS, S2S0.realization(), "Z")
    with pytest.raises(InvalidInputError):
        decomposition_55(TWO_POINTS, S2S0.realization()[:1])


def test_arrangements():
    real = arrangement_complement(TWO_POINTS, "R")
    assert real["agrees"] and real["oracle"]["betti"] == {"0": 4}
    cx = arrangement_complement(TWO_POINTS, "C")
    assert cx["agrees"] and cx["oracle"]["betti"] == {"0": 1, "1": 2, "2": 1}
    pt = arrangement_complement(build("empty", GroundSet.range(3)), "C", oracle=False)
    assert pt["decomposition"]["total"]["betti"] == {"0": 1, "5": 1}
    with pytest.raises(InvalidInputError):
        arrangement_complement(TWO_POINTS, "H")


specs = st.integers(1, 3).flatmap(
    lambda m: st.tuples(complexes_on(m), st.lists(st.integers(0, 2).flatmap(
        lambda r: st.tuples(st.just(r), st.integers(0, r))), min_size=m, max_size=m)))


@given(specs)
def test_sphere_pairs_match_decomposition(inst):
    K, entries = inst
    spec = SpherePairSpec(tuple(entries))
    M, Mc = sphere_pair_betti(K, spec)
    dec = decomposition_55(K, spec.realization())
    assert (dec.hat, dec.bar) == (M.hat, M.bar)
    if K.n:
        dc = decomposition_55(dual(K), spec.complement().realization())
        assert (dc.hat, dc.bar) == (Mc.hat, Mc.bar)


@given(complexes(min_n=1, max_n=4), st.data())
def test_duality_random(K, data):
    spec = SpherePairSpec(tuple((r, data.draw(st.integers(0, r)))
                                for r in data.draw(st.lists(st.integers(0, 3), min_size=K.n, max_size=K.n))))
    assert duality_check_56(K, spec)


@given(st.integers(1, 2).flatmap(lambda m: complexes_on(m)))
def test_oracle_small(K):
    spec = SpherePairSpec(((1, 0),) * K.n)
    assert oracle_compare_55(K, spec.realization())
