"""Seeded random complexes, simplicial pairs and finite-set pairs.

Everything takes either a seed or a ``random.Random`` so batch runners can
thread one generator through many instances.
"""
from __future__ import annotations

import random
from typing import Sequence

from .complex import GroundSet, SimplicialComplex, SimplicialPair, boundary, popcount, simplex
from .errors import InvalidInputError
from .limits import MAX_RANDOM_N


def as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_complex(rng, ground: GroundSet | int, density: float = 0.5) -> SimplicialComplex:
    """Each nonempty subset s becomes a generator with probability density**|s|.

    density 1 gives the full simplex, density 0 gives {emptyset}. The result is
    never void.
    """
    rng = as_rng(rng)
    if isinstance(ground, int):
        ground = GroundSet.range(ground)
    n = len(ground)
    if n > MAX_RANDOM_N:
        raise InvalidInputError(f"random complexes are limited to n <= {MAX_RANDOM_N}")
    if not 0.0 <= density <= 1.0:
        raise InvalidInputError("density must lie in [0, 1]")
    gens = [0]
    for s in range(1, 1 << n):
        if rng.random() < density ** popcount(s):
            gens.append(s)
    return SimplicialComplex.from_facet_masks(ground, gens)


def random_subcomplex(rng, K: SimplicialComplex, p_delete: float = 0.3, allow_void: bool = False) -> SimplicialComplex:
    """Delete random faces of K together with everything above them."""
    rng = as_rng(rng)
    faces = set(K.faces)
    if allow_void and rng.random() < 0.1:
        return SimplicialComplex(K.ground, [], check=False)
    for f in sorted(K.faces):
        if f and f in faces and rng.random() < p_delete:
            faces = {g for g in faces if g & f != f}
    return SimplicialComplex(K.ground, faces, check=False)


def random_pair(rng, ground: GroundSet | int, density: float = 0.6, p_delete: float = 0.3,
                allow_void: bool = False) -> SimplicialPair:
    rng = as_rng(rng)
    X = random_complex(rng, ground, density)
    return SimplicialPair(X, random_subcomplex(rng, X, p_delete, allow_void))


def gen_random(seed, n: int, density: float = 0.5, blocks: Sequence[int] | None = None,
               pair_density: float = 0.6, p_delete: float = 0.3):
    """A random complex on [n]; with ``blocks`` also one random pair per block.

    With blocks, K lives on [m] with m = len(blocks) (n is ignored) and the
    return value is ``(K, pairs)``.
    """
    rng = as_rng(seed)
    if blocks is None:
        return random_complex(rng, n, density)
    K = random_complex(rng, len(blocks), density)
    grounds = GroundSet.blocked(blocks).blocks
    pairs = [random_pair(rng, GroundSet(b), pair_density, p_delete) for b in grounds]
    return K, pairs


def random_sphere_like(rng, n: int) -> SimplicialComplex:
    """Pick among boundaries, cycles, joins of boundaries and the octahedron (all on [n] when they fit)."""
    rng = as_rng(rng)
    choices = ["boundary"]
    if n >= 4:
        choices.append("cycle")
    if n == 6:
        choices.append("octahedron")
    kind = rng.choice(choices)
    g = GroundSet.range(n)
    if kind == "boundary":
        return boundary(g)
    if kind == "cycle":
        return SimplicialComplex.from_facets(g, [[i, i % n + 1] for i in range(1, n + 1)])
    return SimplicialComplex.from_facets(g, [[a, b, c] for a in (1, 2) for b in (3, 4) for c in (5, 6)])


def random_finite_pairs(rng, m: int, max_size: int = 3, allow_empty_x: bool = False,
                        p_empty: float = 0.1) -> list:
    """X_k = {0..s-1} with s uniform in 1..max_size; with ``allow_empty_x`` each
    X_k is empty with probability ``p_empty`` instead (rare, so products stay nontrivial)."""
    from .setmodel import FiniteSetPair

    rng = as_rng(rng)
    out = []
    for _ in range(m):
        size = 0 if allow_empty_x and rng.random() < p_empty else rng.randint(1, max_size)
        X = frozenset(range(size))
        A = frozenset(x for x in X if rng.random() < 0.5)
        out.append(FiniteSetPair(X, A))
    return out


def special_complexes(m: int) -> list[SimplicialComplex]:
    """void, {emptyset} and the full simplex on [m]."""
    g = GroundSet.range(m)
    return [SimplicialComplex(g, [], check=False), SimplicialComplex(g, [0], check=False), simplex(g)]



def all_complexes(ground: GroundSet | int, include_void: bool = True):
    """Every simplicial complex on the ground set (Dedekind many; keep n <= 5)."""
    if isinstance(ground, int):
        ground = GroundSet.range(ground)
    n = len(ground)
    if n > 5:
        raise InvalidInputError("exhaustive enumeration is limited to n <= 5")
    order = sorted(range(1, 1 << n), key=lambda s: (popcount(s), s))

    def walk(i: int, faces: frozenset):
        if i == len(order):
            yield faces
            return
        s = order[i]
        yield from walk(i + 1, faces)
        if all(s & ~(1 << k) in faces for k in range(n) if s >> k & 1):
            yield from walk(i + 1, faces | {s})

    if include_void:
        yield SimplicialComplex(ground, [], check=False)
    for faces in walk(0, frozenset({0})):
        yield SimplicialComplex(ground, faces, check=False)
