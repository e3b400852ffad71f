"""The ten acceptance criteria at their stated sizes and time limits.

Each test prints one PASS/FAIL line (collected again in the terminal
summary) and then asserts both correctness and the runtime bound.
"""
import random
import time

import pytest

import oracles
from conftest import as_sets
from polyjoin.chains import GradedRanks, pp_triangulated, simplicial_homology
from polyjoin.complex import GroundSet, SimplicialPair, boundary, simplex
from polyjoin.duality import SpherePairSpec, decomposition_55, oracle_compare_55, sphere_pair_betti
from polyjoin.verify import factored_table_sweep, run_check, sphere_biconditional, sphere_duality_sweep

pytestmark = pytest.mark.acceptance
SEED = 20240601


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _finish(report, number, title, verdicts, seconds, limit, note=""):
    ok = all(bool(v) for v in verdicts)
    report(number, title, ok and seconds < limit, seconds, limit, note)
    for v in verdicts:
        assert v, getattr(v, "counterexample", v)
    assert seconds < limit, f"criterion {number} took {seconds:.1f}s, limit {limit}s"


def test_c01_dual_involution_de_morgan(acceptance_report):
    v, s = _timed(lambda: run_check("def2.3", SEED, 1000, max_n=8))
    _finish(acceptance_report, 1, "dual involution and De Morgan, 1000 complexes n<=8", [v], s, 10,
            f"checked={v.checked}")


def test_c02_complement_identity(acceptance_report):
    v, s = _timed(lambda: run_check("thm2.4", SEED, 500, max_m=4, max_x=3))
    _finish(acceptance_report, 2, "complement identity, 500 finite-set instances m<=4", [v], s, 10,
            f"max_tuples={v.details['max_tuples_seen']}")


def test_c03_set_identities(acceptance_report):
    def go():
        return [run_check("thm2.6", SEED, 300, max_n=6),
                run_check("thm2.10", SEED, 300, max_m=3, max_nk=3, samples=60),
                run_check("thm2.12", SEED, 300, max_m=3, max_nk=3)]
    vs, s = _timed(go)
    _finish(acceptance_report, 3, "restriction dual, join links, composition dual, 300 each", vs, s, 30,
            "checked=" + "/".join(str(v.checked) for v in vs))


def test_c04_substitution(acceptance_report):
    v, s = _timed(lambda: run_check("thm2.9", SEED, 100, max_m=4, max_nk=3, max_u=3, max_tuples=10_000))
    _finish(acceptance_report, 4, "substitution, 100 instances <=1e4 tuples", [v], s, 30,
            f"max_tuples={v.details['max_tuples_seen']} mean={v.details['mean_tuples']:.0f}")


def test_c05_diagonal_tensor(acceptance_report):
    def go():
        return [run_check("thm3.9", SEED, 200, max_m=3, max_nk=4, rings=("Q", "F2", "F3")),
                run_check("thm3.7", SEED, 50, max_m=3, max_nk=3, rings=("Q", "F2", "F3"))]
    vs, s = _timed(go)
    z = "/".join(str(v.details.get("z_instances", 0)) for v in vs)
    _finish(acceptance_report, 5, "inclusion complex vs diagonal tensor, Q/F2/F3 (+Z when split)", vs, s, 300,
            f"z_instances={z}")


def test_c06_composition_betti_and_spheres(acceptance_report):
    def go():
        poly = run_check("thm3.10", SEED, 100, max_m=3, max_nk=3)
        sph = sphere_biconditional(random.Random(SEED), 300)
        return poly, sph
    (poly, sph), s = _timed(go)
    classes = sph.details["classes"]
    # both directions' counterexample classes must actually be exercised
    covered = classes["K_only"] > 0 and classes["L_only"] > 0 and classes["neither"] > 0 and classes["both"] > 0
    _finish(acceptance_report, 6, "Betti polynomial product and homological-sphere biconditional",
            [poly, sph, covered], s, 120, f"classes={classes}")


def test_c07_factored_table(acceptance_report):
    v, s = _timed(lambda: factored_table_sweep(random.Random(SEED), 300, max_n=8, max_m=4, exhaustive_n=4))
    _finish(acceptance_report, 7, "composition table equals factored table, n<=8", [v], s, 300,
            f"entries={v.checked}")


def test_c08_alexander_tables(acceptance_report):
    v, s = _timed(lambda: run_check("thm5.2", SEED, 300, max_n=7, rings=("Q", "F2", "F3")))
    _finish(acceptance_report, 8, "restriction duality tables over Q/F2/F3, 300 complexes n<=7", [v], s, 120,
            f"pairs={v.checked}")


def test_c09_sphere_pair_pipeline(acceptance_report):
    def go():
        K = boundary(GroundSet.range(2))
        spec = SpherePairSpec(((1, 0), (1, 0)))
        want = GradedRanks({0: 1, 1: 1, 2: 4})
        M, _ = sphere_pair_betti(K, spec)
        dec = decomposition_55(K, spec.realization())
        staircase = oracle_compare_55(K, spec.realization())
        direct = oracles.unreduced_betti(as_sets(pp_triangulated(K, spec.realization())))
        g = GroundSet.range(3)
        disc = SimplicialPair(simplex(g), boundary(g))
        Z = pp_triangulated(K, [disc, disc])
        s3 = simplicial_homology(Z, "Z", reduced=False)
        return [M.total == want, dec.total == want, dec.hat == M.hat, dec.bar == M.bar, bool(staircase),
                direct == want.betti, s3 == GradedRanks({0: 1, 3: 1}),
                oracles.unreduced_betti(as_sets(Z)) == {0: 1, 3: 1}]
    checks, s = _timed(go)
    _finish(acceptance_report, 9, "sphere-pair Betti {0:1,1:1,2:4} and the S^3 moment-angle complex", checks, s, 60)


def test_c10_sphere_pair_duality(acceptance_report):
    v, s = _timed(lambda: sphere_duality_sweep(random.Random(SEED), max_n=5, max_r=3))
    _finish(acceptance_report, 10, "rank-level complement duality, all K with n<=5, r_k<=3", [v], s, 120,
            f"instances={v.checked}")
