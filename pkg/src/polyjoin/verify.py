"""Seeded batch verification, shared by the ``verify`` subcommand and the tests.

Each runner draws ``trials`` instances from one seeded generator, checks
them, and stops at the first counterexample. The merged verdict carries the
seed so a failing run can be replayed.
"""
from __future__ import annotations

import random
from typing import Callable

from .complex import (GroundSet, IndexPair, SimplicialComplex, SimplicialPair, compose, simplex,
                      verify_identity)
from .duality import SpherePairSpec, duality_check_56, oracle_compare_55
from .errors import InvalidInputError, PreconditionError
from .hochster import alexander_dual_check, split_status
from .inclusion import (BasedInclusion, InclusionFamily, compare, composition_betti_polynomial, ex312_check,
                        is_boundary_of_block, sphere_check)
from .linalg import Z, RingSpec
from .random_gen import (all_complexes, random_complex, random_finite_pairs, random_pair,
                         special_complexes)
from .setmodel import verify_complement, verify_substitution
from .verdict import Verdict

Runner = Callable[..., Verdict]
RUNNERS: dict[str, Runner] = {}
DEFAULT_TRIALS = {"def2.3": 1000, "thm2.4": 500, "thm2.6": 300, "thm2.9": 100, "thm2.10": 300,
                  "thm2.12": 300, "thm3.7": 50, "thm3.9": 200, "thm3.10": 100, "thm3.11": 50,
                  "thm5.2": 300, "thm5.6": 200, "oracle5.5": 20}


def runner(name: str):
    def deco(fn):
        RUNNERS[name] = fn
        return fn
    return deco


def _rand_K(rng, n: int, allow_void: bool = True) -> SimplicialComplex:
    roll = rng.random()
    if allow_void and roll < 0.05:
        return special_complexes(n)[0]
    if roll < 0.1:
        return special_complexes(n)[rng.randint(1, 2)]
    return random_complex(rng, n, rng.uniform(0.2, 0.95))


def _rand_pairs(rng, m: int, max_nk: int, allow_void: bool = True, min_nk: int = 1) -> list[SimplicialPair]:
    return [random_pair(rng, rng.randint(min_nk, max_nk), rng.uniform(0.3, 0.95), 0.3, allow_void)
            for _ in range(m)]


@runner("def2.3")
def run_demorgan(rng, trials: int, max_n: int = 8, **_) -> Verdict:
    """Involution and De Morgan laws of the dual on pairs of complexes on one ground set."""
    out = []
    for _ in range(trials):
        n = rng.randint(1, max_n)
        K1, K2 = _rand_K(rng, n), _rand_K(rng, n)
        v = verify_identity("dual-demorgan", {"K1": K1, "K2": K2})
        out.append(v)
        if not v:
            break
    return Verdict.merge("def2.3", out)


@runner("thm2.4")
def run_complement(rng, trials: int, max_m: int = 4, max_x: int = 3, **_) -> Verdict:
    out = []
    sizes = []
    for i in range(trials):
        m = rng.randint(1, max_m)
        K = special_complexes(m)[i % 10] if i % 10 < 3 else random_complex(rng, m, rng.random())
        pairs = random_finite_pairs(rng, m, max_x, allow_empty_x=True)
        size = 1
        for p in pairs:
            size *= len(p.X)
        sizes.append(size)
        v = verify_complement(K, pairs)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm2.4", out, max_tuples_seen=max(sizes), mean_tuples=sum(sizes) / len(sizes))


@runner("thm2.6")
def run_restriction_dual(rng, trials: int, max_n: int = 6, **_) -> Verdict:
    out = []
    for _ in range(trials):
        K = _rand_K(rng, rng.randint(1, max_n))
        v = verify_identity("thm2.6", {"K": K})
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm2.6", out)


@runner("thm2.10")
def run_join_links(rng, trials: int, max_m: int = 3, max_nk: int = 3, samples: int = 30, **_) -> Verdict:
    """Both equalities; a sample of index pairs and link faces per instance."""
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        pairs = _rand_pairs(rng, m, max_nk, min_nk=0)
        n = sum(p.total.n for p in pairs)
        g = GroundSet.blocked([p.total.n for p in pairs])
        inst = {"K": K, "pairs": pairs}
        if 3 ** n <= samples:
            checks = [verify_identity("thm2.10-restrict", inst), verify_identity("thm2.10-link", inst)]
        else:
            checks = []
            for _ in range(samples):
                labels = [rng.randrange(3) for _ in range(n)]
                s = sum(1 << i for i, x in enumerate(labels) if x == 1)
                w = sum(1 << i for i, x in enumerate(labels) if x == 2)
                checks.append(verify_identity("thm2.10-restrict", {**inst, "pair": IndexPair.from_masks(g, s, w)}))
                sig = rng.randrange(1 << n)
                checks.append(verify_identity("thm2.10-link", {**inst, "sigma": list(g.vertices(sig))}))
        v = Verdict.merge("thm2.10", checks)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm2.10", out)


def _rand_L(rng, n: int, allow_void: bool = False) -> SimplicialComplex:
    if allow_void and rng.random() < 0.05:
        return special_complexes(n)[0]
    return random_complex(rng, n, rng.uniform(0.1, 0.95))


@runner("thm2.12")
def run_composition_dual(rng, trials: int, max_m: int = 3, max_nk: int = 3, **_) -> Verdict:
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        Ls = [_rand_L(rng, rng.randint(1, max_nk), allow_void=True) for _ in range(m)]
        v = verify_identity("thm2.12", {"K": K, "Ls": Ls})
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm2.12", out)


@runner("thm2.9")
def run_substitution(rng, trials: int, max_m: int = 3, max_nk: int = 3, max_u: int = 3,
                     max_tuples: int = 10_000, **_) -> Verdict:
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        pairs = _rand_pairs(rng, m, max_nk)
        n = sum(p.total.n for p in pairs)
        while True:
            # about a third of the instances get (roughly one) empty U_i, for the degenerate branch
            inner = random_finite_pairs(rng, n, max_u, allow_empty_x=rng.random() < 0.3, p_empty=1 / max(n, 1))
            size = 1
            for p in inner:
                size *= len(p.X)
            if size <= max_tuples:
                break
        v = verify_substitution(K, pairs, inner)
        v.details = {"tuples": size}
        out.append(v)
        if not v:
            break
    sizes = [v.details["tuples"] for v in out]
    return Verdict.merge("thm2.9", out, max_tuples_seen=max(sizes), mean_tuples=sum(sizes) / len(sizes))


def _field_rings(rings) -> list[RingSpec]:
    return [RingSpec.parse(r) for r in rings]


@runner("thm3.9")
def run_diagonal(rng, trials: int, max_m: int = 3, max_nk: int = 4, rings=("Q", "F2", "F3"),
                 with_z: bool = True, **_) -> Verdict:
    """Fields always; Z only where every factor is certified split."""
    out = []
    z_runs = 0
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        pairs = _rand_pairs(rng, m, max_nk)
        checks = [compare(K, pairs, ring, "thm3.9") for ring in _field_rings(rings)]
        if with_z and all(split_status(p) for p in pairs):
            checks.append(compare(K, pairs, Z, "thm3.9"))
            z_runs += 1
        v = Verdict.merge("thm3.9", checks)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm3.9", out, z_instances=z_runs)


def _rand_inclusion(rng, ring: RingSpec, max_nk: int) -> BasedInclusion:
    """A simplicial inclusion raised by 0 or 1, or one (sigma, omega) total-chain summand."""
    pair = random_pair(rng, rng.randint(1, max_nk), rng.uniform(0.3, 0.95), 0.3, False)
    if rng.random() < 0.5:
        return BasedInclusion.from_pair(pair, ring, rng.randint(0, 1))
    n = pair.total.n
    labels = [rng.randrange(3) for _ in range(n)]
    s = sum(1 << i for i, x in enumerate(labels) if x == 1)
    w = sum(1 << i for i, x in enumerate(labels) if x == 2)
    return BasedInclusion.total_block(pair, s, w, ring)


@runner("thm3.7")
def run_generic_inclusions(rng, trials: int, max_m: int = 3, max_nk: int = 3, rings=("Q", "F2", "F3"),
                           with_z: bool = True, **_) -> Verdict:
    out = []
    z_runs = 0
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        state = rng.getstate()
        checks = []
        for ring in _field_rings(rings) + ([Z] if with_z else []):
            rng.setstate(state)  # same inclusions for every ring
            fam = InclusionFamily([_rand_inclusion(rng, ring, max_nk) for _ in range(m)])
            if ring.tag == "Z":
                if not all(inc.split_status() for inc in fam):
                    continue
                z_runs += 1
            checks.append(compare(K, fam, ring, "thm3.7"))
        v = Verdict.merge("thm3.7", checks)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm3.7", out, z_instances=z_runs)


@runner("thm3.10")
def run_betti_polynomial(rng, trials: int, max_m: int = 3, max_nk: int = 3, ring="Q", **_) -> Verdict:
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m, allow_void=False)
        Ls = [_rand_L(rng, rng.randint(1, max_nk)) for _ in range(m)]
        v = composition_betti_polynomial(K, Ls, ring).verdict
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm3.10", out)


def _sphere_pool() -> list[SimplicialComplex]:
    from .complex import boundary
    pool = [boundary(GroundSet.range(n)) for n in (1, 2, 3, 4)]
    pool.append(SimplicialComplex.from_facets(GroundSet.range(4), [[1, 2], [2, 3], [3, 4], [4, 1]]))
    pool.append(simplex(GroundSet.range(1)))
    pool.append(simplex(GroundSet.range(2)))
    pool.append(SimplicialComplex.from_facets(GroundSet.range(3), [[1], [2], [3]]))
    pool.append(SimplicialComplex.from_facets(GroundSet.range(3), [[1, 2], [3]]))
    return pool


def sphere_biconditional(rng, trials: int, max_m: int = 3, max_total: int = 8) -> Verdict:
    """S(K; L) is a homology sphere iff K is and every L_k is a simplex boundary,
    for ghost-free K (every vertex of the ground is a face)."""
    pool = _sphere_pool()
    complexes = [K for m in range(1, max_m + 1) for K in all_complexes(m, include_void=False)
                 if all(1 << k in K.faces for k in range(m))]
    seen = {"both": 0, "K_only": 0, "L_only": 0, "neither": 0}
    checked = 0
    for _ in range(trials):
        K = rng.choice(complexes)
        while True:
            Ls = [rng.choice(pool) for _ in range(K.n)]
            if sum(L.n for L in Ls) <= max_total:
                break
        k_sphere = sphere_check(K).homological_sphere
        l_bound = all(is_boundary_of_block(L) for L in Ls)
        seen[{(True, True): "both", (True, False): "K_only", (False, True): "L_only",
              (False, False): "neither"}[(k_sphere, l_bound)]] += 1
        lhs = sphere_check(compose(K, Ls)).homological_sphere
        checked += 1
        if lhs != (k_sphere and l_bound):
            from .serialize import complex_to_json
            return Verdict("thm3.10-sphere", False, checked, {
                "K": complex_to_json(K), "Ls": [complex_to_json(L) for L in Ls],
                "composition_sphere": lhs, "K_sphere": k_sphere, "boundaries": l_bound}, {"classes": seen})
    return Verdict("thm3.10-sphere", True, checked, None, {"classes": seen})


@runner("thm3.11")
def run_total(rng, trials: int, max_m: int = 3, max_nk: int = 3, rings=("Q", "F2"), family: str = "X",
              with_z: bool = True, **_) -> Verdict:
    """Table comparison on random polyhedral joins and the factored table of random compositions."""
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        pairs = _rand_pairs(rng, m, max_nk)
        checks = [compare(K, pairs, ring, "thm3.11", family=family) for ring in _field_rings(rings)]
        if with_z:
            try:
                checks.append(compare(K, pairs, Z, "thm3.11", family=family))
            except PreconditionError:
                pass
        Ls = [_rand_L(rng, rng.randint(1, max_nk)) for _ in range(m)]
        checks.append(ex312_check(K, Ls, rings[0], family))
        v = Verdict.merge("thm3.11", checks)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm3.11", out)


def factored_table_sweep(rng, trials: int, max_n: int = 8, max_m: int = 4, ring="Q",
                         exhaustive_n: int = 4) -> Verdict:
    """Every composition with total ground size <= exhaustive_n (K and L_k over all
    non-void complexes), then ``trials`` seeded random ones with total size <= max_n."""
    out = []
    for n in range(1, exhaustive_n + 1):
        for m in range(1, n + 1):
            for sizes in _compositions(n, m):
                for K in all_complexes(m):
                    for Ls in _products([list(all_complexes(s, include_void=False)) for s in sizes]):
                        v = ex312_check(K, Ls, ring)
                        out.append(v)
                        if not v:
                            return Verdict.merge("ex3.12", out)
    exhaustive = sum(v.checked for v in out)
    for _ in range(trials):
        m = rng.randint(1, max_m)
        sizes = [1] * m
        for _ in range(rng.randint(0, max_n - m)):
            sizes[rng.randrange(m)] += 1
        K = _rand_K(rng, m)
        Ls = [_rand_L(rng, s) for s in sizes]
        v = ex312_check(K, Ls, ring)
        out.append(v)
        if not v:
            break
    return Verdict.merge("ex3.12", out, exhaustive_entries=exhaustive)


def _compositions(n: int, m: int):
    if m == 1:
        yield [n]
        return
    for first in range(1, n - m + 2):
        for rest in _compositions(n - first, m - 1):
            yield [first] + rest


def _products(lists):
    from itertools import product
    return product(*lists)


@runner("thm5.2")
def run_alexander(rng, trials: int, max_n: int = 7, rings=("Q", "F2", "F3"), complex=None, **_) -> Verdict:
    if complex is not None:
        return Verdict.merge("thm5.2", [alexander_dual_check(complex, rings)])
    out = []
    for _ in range(trials):
        K = _rand_K(rng, rng.randint(1, max_n))
        v = alexander_dual_check(K, rings)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm5.2", out)


def _rand_spec(rng, m: int, max_r: int) -> SpherePairSpec:
    entries = []
    for _ in range(m):
        r = rng.randint(0, max_r)
        entries.append((r, rng.randint(0, r)))
    return SpherePairSpec(tuple(entries))


@runner("thm5.6")
def run_sphere_duality(rng, trials: int, max_n: int = 5, max_r: int = 3, ring="Q", complex=None,
                       spec: SpherePairSpec | None = None, **_) -> Verdict:
    out = []
    if complex is not None:
        specs = [spec] if spec is not None else [_rand_spec(rng, complex.n, max_r) for _ in range(trials)]
        return Verdict.merge("thm5.6", [duality_check_56(complex, s, ring) for s in specs])
    for _ in range(trials):
        K = _rand_K(rng, rng.randint(1, max_n))
        v = duality_check_56(K, _rand_spec(rng, K.n, max_r), ring)
        out.append(v)
        if not v:
            break
    return Verdict.merge("thm5.6", out)


def sphere_duality_sweep(rng, max_n: int = 5, max_r: int = 3, ring="Q", all_specs_n: int = 2) -> Verdict:
    """Every complex on [n] for n <= max_n with a seeded spec each; for n <= all_specs_n every spec."""
    choices = [(r, q) for r in range(max_r + 1) for q in range(r + 1)]
    out = []
    for n in range(1, max_n + 1):
        for K in all_complexes(n):
            if n <= all_specs_n:
                specs = [SpherePairSpec(e) for e in _products([choices] * n)]
            else:
                specs = [_rand_spec(rng, n, max_r)]
            for spec in specs:
                v = duality_check_56(K, spec, ring)
                out.append(v)
                if not v:
                    return Verdict.merge("thm5.6", out)
    return Verdict.merge("thm5.6", out)


@runner("oracle5.5")
def run_oracle(rng, trials: int, max_m: int = 3, max_nk: int = 3, ring="Q", **_) -> Verdict:
    out = []
    for _ in range(trials):
        m = rng.randint(1, max_m)
        K = _rand_K(rng, m)
        pairs = _rand_pairs(rng, m, max_nk, allow_void=True)
        v = oracle_compare_55(K, pairs, ring)
        out.append(v)
        if not v:
            break
    return Verdict.merge("oracle5.5", out)


def run_check(check: str, seed: int = 0, trials: int | None = None, **options) -> Verdict:
    """Run one registered batch; the result's details record the seed and trial count."""
    if check not in RUNNERS:
        raise InvalidInputError(f"unknown check {check!r}; expected one of {sorted(RUNNERS)}")
    trials = DEFAULT_TRIALS[check] if trials is None else trials
    if trials < 1:
        raise InvalidInputError("trials must be positive")
    v = RUNNERS[check](random.Random(seed), trials, **{k: x for k, x in options.items() if x is not None})
    given = options.get("complex") is not None
    v.details = {"seed": seed, **({"complex": "given"} if given else {"trials": trials}), **v.details}
    if v.passed:
        v.details["passes"] = v.checked if given else trials
    return v
