import io
import json
import subprocess
import sys

import pytest

from polyjoin.cli import main
from polyjoin.complex import GroundSet, SimplicialPair, boundary, simplex
from polyjoin.serialize import complex_to_json, pair_to_json


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_verify_thm24(capsys):
    code, out, _ = run(capsys, "verify", "thm2.4", "--seed", "7", "--trials", "200", "--max-m", "4")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass" and rep["checked"] == 200


def test_verify_thm52_given(capsys):
    code, out, _ = run(capsys, "verify", "thm5.2", "--complex", "boundary:4", "--rings", "Q,F2,F3")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_compose_then_homology(capsys, tmp_path, monkeypatch):
    k = _write(tmp_path, "k.json", complex_to_json(boundary(GroundSet.range(2))))
    l1 = _write(tmp_path, "l1.json", complex_to_json(boundary(GroundSet.range(2))))
    l2 = _write(tmp_path, "l2.json", complex_to_json(boundary(GroundSet((3, 4)))))
    code, out, _ = run(capsys, "compose", "--k", k, "--ls", l1, l2)
    assert code == 0
    code, out, _ = run(capsys, "homology", "--ring", "Z", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["betti"] == {"2": 1}


def test_shell_pipe(tmp_path):
    k = _write(tmp_path, "k.json", complex_to_json(boundary(GroundSet.range(2))))
    cmd = [sys.executable, "-m", "polyjoin"]
    first = subprocess.run(cmd + ["compose", "--k", k, "--ls", "boundary:2", "boundary:2"],
                           capture_output=True, text=True, check=True)
    second = subprocess.run(cmd + ["homology", "--ring", "Z"], input=first.stdout, capture_output=True,
                            text=True, check=True)
    assert json.loads(second.stdout)["betti"] == {"2": 1}


def test_small_commands(capsys):
    code, out, _ = run(capsys, "dual", "simplex:3")
    assert code == 0 and json.loads(out)["void"] is True
    code, out, _ = run(capsys, "link", "boundary:3", "--sigma", "1")
    assert json.loads(out)["facets"] == [[2], [3]]
    code, out, _ = run(capsys, "restrict", "boundary:2", "--sigma", "2", "--omega", "1")
    assert json.loads(out)["facets"] == [[]]
    code, out, _ = run(capsys, "join", "boundary:2", "boundary:2")
    assert len(json.loads(out)["facets"]) == 4
    code, out, _ = run(capsys, "table", "boundary:2", "--out", "csv")
    assert out.splitlines()[0] == "sigma,omega,degree,rank,torsion" and ",1-2,1,1," in out
    code, out, _ = run(capsys, "homology", "boundary:3", "--unreduced")
    assert json.loads(out)["betti"] == {"0": 1, "1": 1}


def test_pair_commands(capsys, tmp_path):
    g = GroundSet.range(3)
    p = _write(tmp_path, "p.json", pair_to_json(SimplicialPair(simplex(g), boundary(g))))
    code, out, _ = run(capsys, "character", p)
    assert json.loads(out)["gamma"] == {"1": 1}
    code, out, _ = run(capsys, "split", p)
    assert json.loads(out)["verdict"] == "split"
    code, out, _ = run(capsys, "split", p, "--total", "--family", "R")
    assert json.loads(out)["all_split"] is True
    code, out, _ = run(capsys, "polyjoin", "--k", "boundary:2", "--pairs", p, p)
    assert code == 0 and len(json.loads(out)["universe"]) == 6


def test_sphere_pair_and_arrangement(capsys):
    code, out, _ = run(capsys, "betti-spherepair", "boundary:2", "--spec", "1,0;1,0")
    rep = json.loads(out)
    assert code == 0 and rep["M"]["total"]["betti"] == {"0": 1, "1": 1, "2": 4}
    code, out, _ = run(capsys, "arrangement", "boundary:2", "--field", "C")
    assert code == 0 and json.loads(out)["agrees"]


def test_gen_random(capsys):
    _, a, _ = run(capsys, "gen-random", "--seed", "3", "--n", "5")
    _, b, _ = run(capsys, "gen-random", "--seed", "3", "--n", "5")
    assert a == b
    _, out, _ = run(capsys, "gen-random", "--seed", "3", "--n", "4", "--density", "1")
    assert json.loads(out)["facets"] == [[1, 2, 3, 4]]
    _, out, _ = run(capsys, "gen-random", "--seed", "3", "--n", "4", "--density", "0")
    assert json.loads(out)["facets"] == [[]]
    _, out, _ = run(capsys, "gen-random", "--seed", "3", "--blocks", "2,3")
    assert len(json.loads(out)["pairs"]) == 2


@pytest.mark.parametrize("argv,code,kind", [
    (["dual", "empty:0"], 2, "invalid-input"),
    (["dual", "nosuchfile.json"], 2, "invalid-input"),
    (["homology", "boundary:3", "--ring", "F4"], 2, "invalid-input"),
    (["table", "empty:13"], 3, "resource-limit"),
    (["homology", "simplex:20", "--max-faces", "1000"], 3, "resource-limit"),
    (["betti-spherepair", "boundary:2", "--spec", "1,0;1,0", "--ring", "Z"], 4, "unsupported-ring"),
])
def test_error_codes(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    assert json.loads(err)["error"] == kind


def test_split_witness(capsys, tmp_path):
    from polyjoin.complex import build
    g5 = GroundSet.range(5)
    band = build("facets", g5, [[i % 5 + 1, (i + 1) % 5 + 1, (i + 2) % 5 + 1] for i in range(5)])
    rim = build("facets", g5, [[i % 5 + 1, (i + 2) % 5 + 1] for i in range(5)])
    p = _write(tmp_path, "p.json", pair_to_json(SimplicialPair(band, rim)))
    code, out, _ = run(capsys, "split", p)
    assert code == 0 and json.loads(out)["witness"] == 2


def test_counterexample_code(capsys, monkeypatch):
    from polyjoin import verify
    from polyjoin.verdict import Verdict
    monkeypatch.setitem(verify.RUNNERS, "thm2.6", lambda rng, trials, **_: Verdict("thm2.6", False, 1, {"K": 0}))
    code, out, _ = run(capsys, "verify", "thm2.6", "--trials", "1")
    assert code == 1 and json.loads(out)["counterexample"] == {"K": 0}


def test_precondition_code(capsys, monkeypatch):
    from polyjoin import verify
    from polyjoin.errors import PreconditionError

    def refuse(rng, trials, **_):
        raise PreconditionError("pair 1 is not certified split over Z")
    monkeypatch.setitem(verify.RUNNERS, "thm3.9", refuse)
    code, out, err = run(capsys, "verify", "thm3.9", "--ring", "Z")
    assert code == 5 and json.loads(err)["error"] == "precondition"
