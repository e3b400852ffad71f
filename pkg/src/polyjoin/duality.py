"""Hat/bar decompositions of polyhedral products and their complement duality.

Everything here uses unreduced homology of the factor pairs and unshifted
character ranks. The reduced, suspended convention of the inclusion engine
is a separate code path on purpose.

For the sphere pairs (S^{r+1}, S^q) every character group is a single Z,
so the decomposition becomes a sum of shifted restriction Betti numbers;
:func:`sphere_pair_betti` evaluates that sum directly from the restriction
table, and :func:`decomposition_55` evaluates the general formula on
simplicial realizations. The two are independent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chains import GradedRanks, simplicial_homology, pp_triangulated
from .complex import (GroundSet, SimplicialComplex, SimplicialPair, _pair_list, boundary, dual,
                      index_pairs, popcount, simplex)
from .errors import InvalidInputError, UnsupportedRingError
from .hochster import character_ranks, restriction_ranks
from .inclusion import predicted_homology
from .linalg import Q, RingSpec
from .verdict import Verdict


@dataclass(frozen=True)
class SpherePairSpec:
    """One (r_k, q_k) per factor, standing for the pair (S^{r_k+1}, S^{q_k})."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple((int(r), int(q)) for r, q in self.entries)
        for r, q in entries:
            if not 0 <= q <= r:
                raise InvalidInputError(f"sphere pair needs 0 <= q <= r, got (r={r}, q={q})")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> SpherePairSpec:
        """``"1,0;1,0"`` -> ((1, 0), (1, 0))."""
        try:
            return cls(tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()))
        except ValueError as e:
            raise InvalidInputError(f"bad sphere-pair spec {text!r}: {e}") from None

    @classmethod
    def from_json(cls, data) -> SpherePairSpec:
        try:
            return cls(tuple((e[0], e[1]) for e in data))
        except (TypeError, IndexError, KeyError) as e:
            raise InvalidInputError(f"bad sphere-pair spec: {e}") from None

    def to_json(self) -> list:
        return [list(e) for e in self.entries]

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def r(self) -> int:
        """Ambient dimension sum(r_k + 1)."""
        return sum(r + 1 for r, _ in self.entries)

    def complement(self) -> SpherePairSpec:
        """q_k -> r_k - q_k, the homotopy type of (S^{r+1}, S^{r+1} minus S^q)."""
        return SpherePairSpec(tuple((r, r - q) for r, q in self.entries))

    def weight(self, sigma: int) -> int:
        return sum(self.entries[k][0] + 1 for k in range(self.m) if sigma >> k & 1)

    def shift(self, sigma: int, omega: int) -> int:
        """t = sum over sigma of (r_k + 1) plus sum over omega of q_k."""
        return self.weight(sigma) + sum(self.entries[k][1] for k in range(self.m) if omega >> k & 1)

    def realization(self) -> list[SimplicialPair]:
        """(boundary of the simplex on r+3 vertices, boundary on its first q+2 vertices)."""
        out = []
        for r, q in self.entries:
            g = GroundSet.range(r + 3)
            low = (1 << (q + 2)) - 1
            sub = SimplicialComplex.from_facet_masks(g, [low & ~(1 << i) for i in range(q + 2)])
            out.append(SimplicialPair(boundary(g), sub))
        return out


@dataclass(frozen=True)
class DecompositionRanks:
    hat: GradedRanks
    bar: GradedRanks

    @property
    def total(self) -> GradedRanks:
        return self.hat + self.bar

    def to_json(self) -> dict:
        return {"hat": self.hat.to_json(), "bar": self.bar.to_json(), "total": self.total.to_json()}


def _field(ring) -> RingSpec:
    ring = RingSpec.parse(ring)
    if not ring.is_field:
        raise UnsupportedRingError("the hat/bar decomposition is computed over a field")
    return ring


def decomposition_55(K: SimplicialComplex, pairs: Sequence, ring: RingSpec | str = Q) -> DecompositionRanks:
    """hat = (sigma, emptyset) terms, bar = terms with omega nonempty, each
    H^{sigma,omega}(K) tensored with unreduced coker/ker/im ranks of H(A_k) -> H(X_k)."""
    ring = _field(ring)
    pairs = _pair_list(pairs)
    if len(pairs) != K.n:
        raise InvalidInputError(f"need {K.n} pairs, got {len(pairs)}")
    chars = [character_ranks(p, ring, reduced=False) for p in pairs]
    hat, bar = predicted_homology(K, chars, ring, shift=0, split_by_omega=True)
    return DecompositionRanks(hat, bar)


def sphere_pair_terms(K: SimplicialComplex, spec: SpherePairSpec, ring: RingSpec | str = Q) -> dict:
    """(sigma, omega) -> graded ranks of Sigma^{t+1} of the reduced homology of K_{sigma,omega}, omega nonempty."""
    ring = _field(ring)
    if spec.m != K.n:
        raise InvalidInputError(f"spec has {spec.m} entries, K has {K.n} vertices")
    out = {}
    for s, w in index_pairs(K.n, "X", nonempty_omega=True):
        h = restriction_ranks(K, s, w, ring)
        if not h.is_zero:
            out[(s, w)] = h.shift(spec.shift(s, w) + 1)
    return out


def sphere_pair_side(K: SimplicialComplex, spec: SpherePairSpec, ring: RingSpec | str = Q,
                     terms: dict | None = None) -> DecompositionRanks:
    hat: dict[int, int] = {}
    for f in K.faces:
        p = spec.weight(f)
        hat[p] = hat.get(p, 0) + 1
    if terms is None:
        terms = sphere_pair_terms(K, spec, ring)
    bar = GradedRanks.zero()
    for term in terms.values():
        bar = bar + term
    return DecompositionRanks(GradedRanks(hat), bar)


def sphere_pair_betti(K: SimplicialComplex, spec: SpherePairSpec,
                      ring: RingSpec | str = Q) -> tuple[DecompositionRanks, DecompositionRanks]:
    """Ranks of M = Z(K; S^{r+1}, S^q) and of its complement model Z(K dual; S^{r+1}, S^{r-q})."""
    return sphere_pair_side(K, spec, ring), sphere_pair_side(dual(K), spec.complement(), ring)


def _cx(K):
    from .serialize import complex_to_json
    return complex_to_json(K)


def duality_check_56(K: SimplicialComplex, spec: SpherePairSpec, ring: RingSpec | str = Q) -> Verdict:
    """bar_p(M) = bar_{r-p-1}(Mc); hat_p(M) + hat_{r-p}(Mc) counts subsets of weight r - p;
    term (sigma, omega) of M at p equals term (complement, omega) of Mc at r - p - 1."""
    ring = _field(ring)
    r = spec.r
    Kd, comp = dual(K), spec.complement()
    ours = sphere_pair_terms(K, spec, ring)
    theirs = sphere_pair_terms(Kd, comp, ring)
    M = sphere_pair_side(K, spec, ring, ours)
    Mc = sphere_pair_side(Kd, comp, ring, theirs)
    failures = []
    degrees = set(M.bar.degrees()) | {r - p - 1 for p in Mc.bar.degrees()}
    for p in sorted(degrees):
        if M.bar[p] != Mc.bar[r - p - 1]:
            failures.append({"kind": "bar", "degree": p, "M": M.bar[p], "Mc": Mc.bar[r - p - 1]})

    counts: dict[int, int] = {}
    for tau in range(1 << K.n):
        w = spec.weight(tau)
        counts[w] = counts.get(w, 0) + 1
    for p in range(r + 1):
        lhs = M.hat[p] + Mc.hat[r - p]
        if lhs != counts.get(r - p, 0):
            failures.append({"kind": "hat", "degree": p, "M": M.hat[p], "Mc": Mc.hat[r - p],
                             "subsets": counts.get(r - p, 0)})

    full = (1 << K.n) - 1
    for s, w in index_pairs(K.n, "X", nonempty_omega=True):
        s2 = full & ~(s | w)
        t, t2 = spec.shift(s, w), comp.shift(s2, w)
        if t + t2 != r - popcount(w):
            failures.append({"kind": "shift", "sigma": s, "omega": w, "t": t, "t_dual": t2})
        a = ours.get((s, w))
        b = theirs.get((s2, w))
        a_betti = dict(a.betti) if a is not None else {}
        b_betti = {r - p - 1: c for p, c in b.betti.items()} if b is not None else {}
        if a_betti != b_betti:
            failures.append({"kind": "term", "sigma": s, "omega": w, "M": a_betti, "Mc_paired": b_betti})
    ok = not failures
    return Verdict("thm5.6", ok, 1, None if ok else {"K": _cx(K), "spec": spec.to_json(), "failures": failures[:10]},
                   {"r": r, "ring": str(ring)})


def pairing_rows(M: DecompositionRanks, Mc: DecompositionRanks, r: int) -> list[dict]:
    """One row per degree p of M with the paired degree r - p - 1 of Mc."""
    top = max([r] + list(M.total.degrees()) + list(Mc.total.degrees()))
    rows = []
    for p in range(0, top + 1):
        q = r - p - 1
        rows.append({"degree": p, "hat_M": M.hat[p], "bar_M": M.bar[p], "total_M": M.total[p],
                     "paired_degree": q, "bar_Mc_paired": Mc.bar[q],
                     "hat_Mc": Mc.hat[p], "bar_Mc": Mc.bar[p], "total_Mc": Mc.total[p]})
    return [row for row in rows if any(v for k, v in row.items() if k not in ("degree", "paired_degree"))]


def oracle_compare_55(K: SimplicialComplex, pairs: Sequence, ring: RingSpec | str = Q) -> Verdict:
    """Unreduced homology of the staircase model of Z(K; X, A) against hat + bar."""
    ring = _field(ring)
    pairs = _pair_list(pairs)
    dec = decomposition_55(K, pairs, ring)
    direct = simplicial_homology(pp_triangulated(K, pairs), ring, reduced=False)
    ok = direct == dec.total
    details = {"ring": str(ring), "decomposition": dec.to_json(), "oracle": direct.to_json(),
               "euler": [dec.total.euler(), direct.euler()]}
    counter = None if ok else {"K": _cx(K), "pairs": [[_cx(p.total), _cx(p.sub)] for p in pairs]}
    return Verdict("oracle5.5", ok, 1, counter, details)


def arrangement_pairs(m: int, field: str = "R") -> list[SimplicialPair]:
    """(D^1, S^0) per coordinate for real arrangements, (D^2, S^1) for complex ones."""
    if field not in ("R", "C"):
        raise InvalidInputError("field must be R or C")
    g = GroundSet.range(2 if field == "R" else 3)
    return [SimplicialPair(simplex(g), boundary(g)) for _ in range(m)]


def arrangement_complement(K: SimplicialComplex, field: str = "R", ring: RingSpec | str = Q,
                           oracle: bool = True) -> dict:
    """Betti ranks of the complement of the coordinate subspaces indexed by K,
    modelled as Z(K dual; D, S) with D a disc of real dimension 1 or 2."""
    Kd = dual(K)
    pairs = arrangement_pairs(K.n, field)
    out = {"field": field, "decomposition": decomposition_55(Kd, pairs, ring).to_json()}
    if oracle:
        v = oracle_compare_55(Kd, pairs, ring)
        out["oracle"] = v.details["oracle"]
        out["agrees"] = v.passed
    return out
