import pytest
from hypothesis import given

from conftest import complexes, pairs
from polyjoin.chains import GradedRanks, reduced_chains
from polyjoin.complex import GroundSet, build, compose, boundary
from polyjoin.errors import InvalidInputError
from polyjoin.hochster import sigma_omega_table
from polyjoin.serialize import (complex_from_json, complex_to_json, dumps, loads, pair_from_json, pair_to_json,
                                rows_to_csv, set_label, table_rows)
from polyjoin.chains import BasedChainComplex


@given(complexes(max_n=6))
def test_complex_roundtrip(K):
    assert complex_from_json(loads(dumps(complex_to_json(K)))) == K


@given(pairs(max_n=4))
def test_pair_roundtrip(P):
    Q = pair_from_json(loads(dumps(pair_to_json(P))))
    assert Q.total == P.total and Q.sub == P.sub


def test_blocked_roundtrip():
    S = compose(boundary(GroundSet.range(2)), [boundary(GroundSet.range(2)), boundary(GroundSet.range(3))])
    data = complex_to_json(S)
    assert "blocks" in data
    assert complex_from_json(loads(dumps(data))) == S


def test_empty_vs_void():
    assert complex_to_json(build("empty", GroundSet.range(2)))["facets"] == [[]]
    assert complex_to_json(build("void", GroundSet.range(2))) == {"universe": [1, 2], "void": True, "facets": []}


@pytest.mark.parametrize("bad", [
    [], {"universe": [1]}, {"universe": [1], "void": False, "facets": []},
    {"universe": [1], "void": True, "facets": [[1]]}, {"universe": [1], "void": "no", "facets": [[1]]},
    {"universe": [1], "void": False, "facets": [[2]]}, {"universe": [1.5], "void": False, "facets": [[]]},
    {"universe": [1], "void": False, "facets": [[]], "extra": 1},
])
def test_rejects_malformed(bad):
    with pytest.raises(InvalidInputError):
        complex_from_json(bad)


def test_bad_json_text():
    with pytest.raises(InvalidInputError):
        loads("{nope")
    with pytest.raises(InvalidInputError):
        pair_from_json({"total": {}})


def test_ranks_and_chains_roundtrip():
    h = GradedRanks({0: 1, 2: 3}, {1: [2, 4]})
    assert GradedRanks.from_json(loads(dumps(h.to_json()))) == h
    C = reduced_chains(boundary(GroundSet.range(3)), "Z")
    assert BasedChainComplex.from_json(loads(dumps(C.to_json()))) == C


def test_table_rows_and_csv():
    T = sigma_omega_table(boundary(GroundSet.range(2)))
    rows = table_rows(T)
    assert rows[0] == {"sigma": "", "omega": "", "degree": 0, "rank": 1, "torsion": ""}
    assert {"sigma": "", "omega": "1-2", "degree": 1, "rank": 1, "torsion": ""} in rows
    text = rows_to_csv(rows, ["sigma", "omega", "degree", "rank", "torsion"])
    assert text.splitlines()[0] == "sigma,omega,degree,rank,torsion"
    assert len(text.splitlines()) == len(rows) + 1
    assert set_label([3, 1, 2]) == "1-2-3" and set_label([]) == ""
