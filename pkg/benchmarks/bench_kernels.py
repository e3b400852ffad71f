"""Compare the compiled elimination kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Matrices are boundary maps of real complexes (so the shapes and sparsity
are the ones the library sees), plus dense random integer matrices.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from polyjoin._backend import ckernels, pykernels
from polyjoin.chains import pp_triangulated, reduced_chains
from polyjoin.complex import GroundSet, SimplicialPair, boundary, simplex
from polyjoin.linalg import Q


def boundary_matrices():
    g = GroundSet.range(3)
    pair = SimplicialPair(simplex(g), boundary(g))
    K = boundary(GroundSet.range(3))
    C = reduced_chains(pp_triangulated(K, [pair, pair, pair]), Q)
    out = []
    for d in sorted(C.boundaries):
        M = np.array(C.boundaries[d].dense(), dtype=np.int64)
        if M.size:
            out.append((f"staircase d{d} {M.shape[0]}x{M.shape[1]}", M))
    return out


def random_matrices(seed: int = 0):
    rng = random.Random(seed)
    out = []
    for n in (40, 80, 160):
        M = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        out.append((f"random {n}x{n}", M))
    return out


def clock(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if ckernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return
    cases = boundary_matrices() + random_matrices()
    print(f"{'matrix':34s} {'kernel':14s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, M in cases:
        for label, py, cy in [
            ("rank mod 2", lambda: pykernels.rank_mod_p(M, 2), lambda: ckernels.rank_mod_p(M, 2)),
            ("rank mod 3", lambda: pykernels.rank_mod_p(M, 3), lambda: ckernels.rank_mod_p(M, 3)),
            ("int diagonal", lambda: pykernels.int_diagonal(M), lambda: ckernels.int_diagonal(M)),
        ]:
            if label == "int diagonal" and name.startswith("random"):
                continue  # dense random entries overflow int64; the library falls back to Python there
            tp, tc = clock(py, args.repeat), clock(cy, args.repeat)
            print(f"{name:34s} {label:14s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
