"""Polyhedral products of finite sets.

With discrete spaces the complement and substitution identities are plain
set equalities, so they can be checked by listing tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from .complex import (SimplicialComplex, _pair_list, bits, dual, join, link,
                      polyhedral_join)
from .errors import InvalidInputError, ResourceLimitError
from .limits import MAX_TUPLES
from .verdict import Verdict


@dataclass(frozen=True)
class FiniteSetPair:
    X: frozenset
    A: frozenset

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(self.X))
        object.__setattr__(self, "A", frozenset(self.A))
        if not self.A <= self.X:
            raise InvalidInputError("A must be a subset of X")

    @property
    def complement(self) -> FiniteSetPair:
        """(X, X minus A)."""
        return FiniteSetPair(self.X, self.X - self.A)

    def to_json(self) -> dict:
        return {"X": _sorted(self.X), "A": _sorted(self.A)}

    @classmethod
    def from_json(cls, data) -> FiniteSetPair:
        try:
            return cls(frozenset(_atom(x) for x in data["X"]), frozenset(_atom(x) for x in data["A"]))
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"bad finite-set pair: {e}") from None


def _atom(x):
    return tuple(_atom(y) for y in x) if isinstance(x, list) else x


def _sorted(s) -> list:
    return sorted(s, key=lambda x: (str(type(x)), x))


def _check_size(pairs: Sequence[FiniteSetPair]) -> None:
    total = prod(len(p.X) for p in pairs)
    if total > MAX_TUPLES:
        raise ResourceLimitError(f"product has {total} tuples, over the cap of {MAX_TUPLES}")


def pp_points(K: SimplicialComplex, pairs: Sequence[FiniteSetPair]) -> frozenset:
    """Union over faces tau of K of the products taking X_k on tau and A_k elsewhere."""
    if len(pairs) != K.n:
        raise InvalidInputError(f"need {K.n} set pairs, got {len(pairs)}")
    _check_size(pairs)
    out: set = set()
    for tau in K.facets:
        factors = [pairs[k].X if tau >> k & 1 else pairs[k].A for k in range(K.n)]
        out.update(product(*factors))
    return frozenset(out)


def full_product(pairs: Sequence[FiniteSetPair]) -> frozenset:
    _check_size(pairs)
    return frozenset(product(*(p.X for p in pairs)))


def _cx(K):
    from .serialize import complex_to_json
    return complex_to_json(K)


def verify_complement(K: SimplicialComplex, pairs: Sequence[FiniteSetPair]) -> Verdict:
    """Product minus Z(K; X, A) equals Z(K dual; X, X minus A)."""
    lhs = full_product(pairs) - pp_points(K, pairs)
    rhs = pp_points(dual(K), [p.complement for p in pairs])
    ok = lhs == rhs
    return Verdict("thm2.4", ok, 1, None if ok else {
        "K": _cx(K), "pairs": [p.to_json() for p in pairs],
        "only_lhs": [list(t) for t in sorted(lhs - rhs)][:5], "only_rhs": [list(t) for t in sorted(rhs - lhs)][:5]})


def verify_substitution(K: SimplicialComplex, pairs: Sequence, inner: Sequence[FiniteSetPair]) -> Verdict:
    """Z(K; Y, B) with (Y_k, B_k) = (Z(X_k; U, C), Z(A_k; U, C)) over block k equals
    Z(S(K; X, A); U, C), compared as sets of n-tuples."""
    pairs = _pair_list(pairs)
    sizes = [p.total.n for p in pairs]
    if len(inner) != sum(sizes):
        raise InvalidInputError(f"need {sum(sizes)} inner set pairs, got {len(inner)}")
    _check_size(inner)
    blocks, off = [], 0
    for n in sizes:
        blocks.append(list(inner[off:off + n]))
        off += n
    outer = [FiniteSetPair(pp_points(p.total, b), pp_points(p.sub, b)) for p, b in zip(pairs, blocks)]
    lhs = frozenset(tuple(x for part in t for x in part) for t in pp_points(K, outer))
    rhs = pp_points(polyhedral_join(K, pairs), inner)
    ok = lhs == rhs
    return Verdict("thm2.9", ok, 1, None if ok else {
        "K": _cx(K), "pairs": [[_cx(p.total), _cx(p.sub)] for p in pairs],
        "inner": [p.to_json() for p in inner]})


@dataclass
class Normalized:
    """``K`` is link_K S, ``pairs`` the remaining pairs, ``factors`` the X_k for k in S."""

    K: SimplicialComplex
    pairs: list
    factors: list
    S: int
    m: int


def normalize(K: SimplicialComplex, pairs: Sequence) -> Normalized:
    """Split off the blocks with empty A_k (set pairs) or void A_k (simplicial pairs).

    The reassembled object is compared with the original before returning;
    a mismatch raises AssertionError.
    """
    pairs = list(pairs)
    if len(pairs) != K.n:
        raise InvalidInputError(f"need {K.n} pairs, got {len(pairs)}")
    simplicial = bool(pairs) and not isinstance(pairs[0], FiniteSetPair)
    if simplicial:
        pairs = _pair_list(pairs)
        degenerate = [p.sub.is_void for p in pairs]
    else:
        degenerate = [not p.A for p in pairs]
    S = sum(1 << k for k, d in enumerate(degenerate) if d)
    reduced = link(K, K.ground.vertices(S))
    rest = [p for k, p in enumerate(pairs) if not S >> k & 1]
    factors = [(p.total if simplicial else p.X) for k, p in enumerate(pairs) if S >> k & 1]
    out = Normalized(reduced, rest, factors, S, K.n)
    if simplicial:
        assert _reassemble_join(out, pairs) == polyhedral_join(K, pairs).faces, "normalization changed the join"
    else:
        assert _reassemble_points(out) == pp_points(K, pairs), "normalization changed the product"
    return out


def _reassemble_points(N: Normalized) -> frozenset:
    inner = pp_points(N.K, N.pairs)
    keep = [k for k in range(N.m) if not N.S >> k & 1]
    lost = list(bits(N.S))
    out = set()
    for t in inner:
        for extra in product(*N.factors):
            row = [None] * N.m
            for k, x in zip(keep, t):
                row[k] = x
            for k, x in zip(lost, extra):
                row[k] = x
            out.add(tuple(row))
    return frozenset(out)


def _reassemble_join(N: Normalized, pairs) -> frozenset:
    """Faces of S(link_K S; rest) * (join of the X_k), mapped back to the original block order."""
    sizes = [p.total.n for p in pairs]
    offsets = [sum(sizes[:k]) for k in range(len(sizes))]
    keep = [k for k in range(N.m) if not N.S >> k & 1]
    lost = list(bits(N.S))
    J = join([polyhedral_join(N.K, N.pairs)] + list(N.factors))
    # position maps: J's ground is inner blocks (keep order) then the lost blocks
    order = keep + lost
    perm = []
    for k in order:
        perm.extend(range(offsets[k], offsets[k] + sizes[k]))
    out = set()
    for f in J.faces:
        g = 0
        for i in bits(f):
            g |= 1 << perm[i]
        out.add(g)
    return frozenset(out)

