"""Polyhedral product inclusion complexes and the diagonal-tensor homology
formula, with comparators that pit the formula against direct homology.

Three grading conventions meet here:

* a generic based inclusion contributes its own character ranks, unshifted;
* a simplicial pair (X, A) contributes the characters of the reduced map
  H(A) -> H(X), each raised by one (the inclusion is of suspended chains);
* table entries H^{sigma,omega}_a(K) are reduced Betti numbers of
  K_{sigma,omega} in degree a-1.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .chains import (UNIT, BasedChainComplex, GradedRanks, betti_polynomial, faces_homology,
                     homology, induced_map_chains, pair_chains, simplicial_homology, tensor_suspend)
from .complex import (SimplicialComplex, SimplicialPair, _pair_list, compose, index_pairs, polyhedral_join,
                      popcount, restrict_masks)
from .errors import InvalidInputError, PreconditionError
from .hochster import (CharacterRanks, SplitStatus, character_ranks, sigma_omega_table, split_from_chains,
                       split_status, total_chain_block)
from .linalg import Q, Z, RingSpec
from .verdict import Verdict


class BasedInclusion:
    """Inclusion of chain complexes that sends sub basis elements to total basis elements."""

    __slots__ = ("sub", "total", "embedding")

    def __init__(self, sub: BasedChainComplex, total: BasedChainComplex,
                 embedding: Mapping[int, Sequence[int]] | None = None, check: bool = True):
        if sub.ring != total.ring:
            raise InvalidInputError("sub and total must share a ring")
        if embedding is None:
            embedding = {}
            for d, labs in sub.bases.items():
                idx = total.index(d)
                try:
                    embedding[d] = [idx[lab] for lab in labs]
                except KeyError as e:
                    raise InvalidInputError(
                        f"not a based inclusion: {e.args[0]!r} has no match in degree {d}") from None
        self.sub = sub
        self.total = total
        self.embedding = {d: list(v) for d, v in embedding.items()}
        if check:
            self._validate()

    def _validate(self) -> None:
        for d, labs in self.sub.bases.items():
            emb = self.embedding.get(d)
            if emb is None or len(emb) != len(labs):
                raise InvalidInputError(f"embedding missing in degree {d}")
            if len(set(emb)) != len(emb) or any(not 0 <= i < self.total.dim(d) for i in emb):
                raise InvalidInputError(f"embedding is not injective into the total basis in degree {d}")
        # chain map check: d_total(emb(x)) == emb(d_sub(x))
        for d in self.sub.degrees:
            Mt = self.total.boundaries.get(d)
            Ms = self.sub.boundaries.get(d)
            lower = self.embedding.get(d - 1, [])
            for c, tc in enumerate(self.embedding[d]):
                img = dict(Mt.cols[tc]) if Mt is not None else {}
                want = {lower[i]: v for i, v in Ms.cols[c].items()} if Ms is not None else {}
                if img != want:
                    raise InvalidInputError(
                        f"sub is not closed under the total boundary at {self.sub.bases[d][c]!r}")

    @classmethod
    def from_pair(cls, pair: SimplicialPair, ring: RingSpec | str = Q, shift: int = 1) -> BasedInclusion:
        """Reduced simplicial chains of A inside those of X, raised by ``shift``."""
        sub, total, emb = pair_chains(pair, RingSpec.parse(ring))
        return cls(sub.shifted(shift), total.shifted(shift), {d + shift: v for d, v in emb.items()})

    @classmethod
    def total_block(cls, pair: SimplicialPair, sigma: int, omega: int, ring: RingSpec | str = Q) -> BasedInclusion:
        """The (sigma, omega) summand of the total chain complex of A inside that of X."""
        ring = RingSpec.parse(ring)
        return cls(total_chain_block(pair.sub, sigma, omega, ring), total_chain_block(pair.total, sigma, omega, ring))

    def image(self) -> dict[int, set[int]]:
        return {d: set(v) for d, v in self.embedding.items()}

    def induced_map(self, ring: RingSpec | str | None = None):
        ring = RingSpec.parse(ring) if ring is not None else self.sub.ring
        return induced_map_chains(self.sub.with_ring(ring), self.total.with_ring(ring), self.embedding, ring)

    def characters(self, ring: RingSpec | str | None = None) -> CharacterRanks:
        ring = RingSpec.parse(ring) if ring is not None else self.sub.ring
        if not ring.is_field:
            ring = Q  # ranks only; callers certify the split hypothesis first
        return CharacterRanks.from_map(self.induced_map(ring))

    def split_status(self) -> SplitStatus:
        return split_from_chains(self.sub.with_ring(Z), self.total.with_ring(Z), self.embedding)


class InclusionFamily(list):
    """The m based inclusions, one per vertex of K's ground."""

    def __init__(self, members: Sequence[BasedInclusion]):
        members = list(members)
        if not members:
            raise InvalidInputError("an inclusion family needs at least one member")
        if not all(isinstance(x, BasedInclusion) for x in members):
            raise InvalidInputError("family members must be BasedInclusion objects")
        super().__init__(members)

    @classmethod
    def from_pairs(cls, pairs: Sequence, ring: RingSpec | str = Q, shift: int = 1) -> InclusionFamily:
        return cls([BasedInclusion.from_pair(p, ring, shift) for p in _pair_list(pairs)])

    @property
    def ring(self) -> RingSpec:
        return self[0].sub.ring


def build_inclusion_complex(K: SimplicialComplex, fam: Sequence[BasedInclusion]) -> BasedChainComplex:
    """Span of the tensor basis words whose set of factors outside the sub basis is a face of K."""
    fam = fam if isinstance(fam, InclusionFamily) else InclusionFamily(fam)
    if len(fam) != K.n:
        raise InvalidInputError(f"K has {K.n} vertices but the family has {len(fam)} inclusions")
    ring = fam.ring
    if K.is_void:
        return BasedChainComplex({}, {}, ring, check=False)
    totals = [inc.total for inc in fam]
    full = tensor_suspend(totals)
    images = [inc.image() for inc in fam]
    gens = [[(d, i) for d in C.degrees for i in range(C.dim(d))] for C in totals]
    faces = K.faces
    keep: dict[int, list] = {}
    for combo in product(*gens):
        outside = 0
        for k, (d, i) in enumerate(combo):
            if i not in images[k].get(d, ()):
                outside |= 1 << k
        if outside in faces:
            deg = sum(d for d, _ in combo)
            keep.setdefault(deg, []).append(tuple(totals[k].bases[d][i] for k, (d, i) in enumerate(combo)))
    out = full.subcomplex(keep)
    out.check_dd()
    return out


# -- the diagonal tensor formula ------------------------------------------------

def _role_product(chars: Sequence[CharacterRanks], sigma: int, omega: int, shift: int) -> GradedRanks:
    out = UNIT
    for k, c in enumerate(chars):
        if sigma >> k & 1:
            part = c.alpha
        elif omega >> k & 1:
            part = c.gamma
        else:
            part = c.eta
        out = out.convolve(part.shift(shift))
        if out.is_zero:
            break
    return out


def predicted_homology(K: SimplicialComplex, chars: Sequence[CharacterRanks], ring: RingSpec | str = Q,
                       shift: int = 1, split_by_omega: bool = False):
    """Sum over (sigma, omega) of H^{sigma,omega}(K) tensored with the factor characters.

    Factor k contributes coker if k in sigma, ker if k in omega, im otherwise,
    each raised by ``shift`` (1 for reduced simplicial maps, 0 for characters
    already computed on the inclusion itself). With ``split_by_omega`` the
    result is ``(omega empty part, omega nonempty part)``.
    """
    ring = RingSpec.parse(ring)
    if len(chars) != K.n:
        raise InvalidInputError(f"need {K.n} character records, got {len(chars)}")
    table = sigma_omega_table(K, ring, "X")
    head = GradedRanks.zero()
    tail = GradedRanks.zero()
    for (s, w), h in table.nonzero().items():
        term = h.convolve(_role_product(chars, s, w, shift))
        if w:
            tail = tail + term
        else:
            head = head + term
    return (head, tail) if split_by_omega else head + tail


def _report(check: str, ok: bool, ring: RingSpec, counter: dict | None = None, **tables) -> Verdict:
    details = {"ring": str(ring)}
    for name, t in tables.items():
        details[name] = t.to_json() if isinstance(t, GradedRanks) else t
    return Verdict(check, ok, 1, counter if not ok else None, details)


def _instance(K, pairs) -> dict:
    from .serialize import complex_to_json, pair_to_json
    return {"K": complex_to_json(K), "pairs": [pair_to_json(p) for p in pairs]}


def _require_split(statuses, what: str) -> None:
    for i, st in enumerate(statuses):
        if not st:
            raise PreconditionError(f"{what} {i + 1} is not certified split over Z: {st.verdict}"
                                    + (f" ({st.reason})" if st.reason else ""))


def compare(K: SimplicialComplex, fam, ring: RingSpec | str = Q, mode: str = "thm3.9",
            family="X", check_complex: bool | None = None) -> Verdict:
    """Direct homology against the diagonal-tensor prediction.

    * ``thm3.7``: ``fam`` is an :class:`InclusionFamily`; characters of each
      inclusion, unshifted.
    * ``thm3.9``: ``fam`` lists simplicial pairs; the inclusion complex of
      suspended reduced chains and the suspended homology of the polyhedral
      join are both compared with the prediction.
    * ``thm3.11``: ``fam`` lists simplicial pairs; every (sigma, omega) entry
      of the polyhedral join's table (family X or R, or one tag per block) is
      compared with the prediction built from the restricted pairs. When
      ``check_complex`` is set (default: n <= 6) the inclusion complex of the
      total chain complex summands is compared as well.

    Over Z the split hypothesis must be certified, otherwise PreconditionError.
    """
    ring = RingSpec.parse(ring)
    if mode == "thm3.7":
        fam = fam if isinstance(fam, InclusionFamily) else InclusionFamily(fam)
        fam_r = InclusionFamily([BasedInclusion(i.sub.with_ring(ring), i.total.with_ring(ring), i.embedding,
                                                check=False) for i in fam])
        if ring.tag == "Z":
            _require_split([i.split_status() for i in fam_r], "inclusion")
        chars = [i.characters(ring) for i in fam_r]
        direct = homology(build_inclusion_complex(K, fam_r))
        predicted = predicted_homology(K, chars, ring, shift=0)
        ok = direct == predicted
        return _report(mode, ok, ring, {"K": _instance(K, [])["K"]}, direct=direct, predicted=predicted)

    pairs = _pair_list(fam)
    if mode == "thm3.9":
        if ring.tag == "Z":
            _require_split([split_status(p) for p in pairs], "pair")
        chars = [character_ranks(p, ring if ring.is_field else Q) for p in pairs]
        predicted = predicted_homology(K, chars, ring, shift=1)
        via_complex = homology(build_inclusion_complex(K, InclusionFamily.from_pairs(pairs, ring, 1)))
        via_join = simplicial_homology(polyhedral_join(K, pairs), ring).shift(1)
        ok = predicted == via_complex == via_join
        return _report(mode, ok, ring, _instance(K, pairs), predicted=predicted, inclusion_complex=via_complex,
                       polyhedral_join=via_join)

    if mode == "thm3.11":
        return _compare_total(K, pairs, ring, family, check_complex)
    raise InvalidInputError(f"unknown mode {mode!r}")


def block_pairs(sizes: Sequence[int], families) -> list[tuple[int, int]]:
    """(sigma, omega) masks on the blocked ground whose block k restriction lies in family k."""
    per_block = [list(index_pairs(n, f)) for n, f in zip(sizes, families)]
    out = []
    for combo in product(*per_block):
        s = w = off = 0
        for (sk, wk), n in zip(combo, sizes):
            s |= sk << off
            w |= wk << off
            off += n
        out.append((s, w))
    return out


def _split_masks(mask: int, sizes: Sequence[int]) -> list[int]:
    out, off = [], 0
    for n in sizes:
        out.append((mask >> off) & ((1 << n) - 1))
        off += n
    return out


def _compare_total(K, pairs, ring, family, check_complex) -> Verdict:
    sizes = [p.total.n for p in pairs]
    families = [family] * len(pairs) if isinstance(family, str) else list(family)
    if len(families) != len(pairs):
        raise InvalidInputError("need one family tag per block")
    if ring.tag == "Z":
        for k, (p, f) in enumerate(zip(pairs, families)):
            st = split_status(p, "total", f)
            bad = [v for v in st.values() if not v]
            if bad:
                raise PreconditionError(f"pair {k + 1} is not certified total split over Z: {bad[0].verdict}")
    S = polyhedral_join(K, pairs)
    if check_complex is None:
        check_complex = S.n <= 6
    field = ring if ring.is_field else Q
    char_cache: dict[tuple[int, int, int], CharacterRanks] = {}
    checked = 0
    for s, w in block_pairs(sizes, families):
        sk, wk = _split_masks(s, sizes), _split_masks(w, sizes)
        chars = []
        for k, p in enumerate(pairs):
            key = (k, sk[k], wk[k])
            if key not in char_cache:
                char_cache[key] = character_ranks(p.restrict_masks(sk[k], wk[k]), field)
            chars.append(char_cache[key])
        predicted = predicted_homology(K, chars, ring, shift=1)
        direct = faces_homology(restrict_masks(S, s, w), ring).shift(1)
        ok = predicted == direct
        tables = {"predicted": predicted, "direct": direct}
        if ok and check_complex:
            fam = InclusionFamily([BasedInclusion.total_block(p, sk[k], wk[k], ring) for k, p in enumerate(pairs)])
            via_complex = homology(build_inclusion_complex(K, fam))
            ok = via_complex == direct
            tables["inclusion_complex"] = via_complex
        checked += 1
        if not ok:
            v = _report("thm3.11", False, ring, {**_instance(K, pairs),
                                                  "sigma": list(S.ground.vertices(s)),
                                                  "omega": list(S.ground.vertices(w))}, **tables)
            v.checked = checked
            return v
    return Verdict("thm3.11", True, checked, None, {"ring": str(ring), "family": families})


# -- composition complexes -----------------------------------------------------------

def ex312_prediction(K: SimplicialComplex, Ls: Sequence[SimplicialComplex], sigma: int, omega: int,
                     ring: RingSpec | str = Q) -> GradedRanks:
    """Entry (sigma, omega) of the composition's table from K's and the L_k's tables.

    H^{sigma,omega}(S) = H^{s^,w^}(K) (x) (x)_{omega_k != {}} H^{sigma_k,omega_k}(L_k) with
    s^ = {k | sigma_k not in L_k, omega_k = {}} and w^ = {k | omega_k != {}}.
    """
    ring = RingSpec.parse(ring)
    sizes = [L.n for L in Ls]
    sk, wk = _split_masks(sigma, sizes), _split_masks(omega, sizes)
    s_hat = w_hat = 0
    out = UNIT
    for k, L in enumerate(Ls):
        if wk[k]:
            w_hat |= 1 << k
            out = out.convolve(faces_homology(restrict_masks(L, sk[k], wk[k]), ring).shift(1))
        elif sk[k] not in L.faces:
            s_hat |= 1 << k
        if out.is_zero:
            return out
    return faces_homology(restrict_masks(K, s_hat, w_hat), ring).shift(1).convolve(out)


def ex312_check(K: SimplicialComplex, Ls: Sequence[SimplicialComplex], ring: RingSpec | str = Q,
                family: str = "X") -> Verdict:
    """Compare the full (sigma, omega) table of compose(K, Ls) with the factored prediction."""
    ring = RingSpec.parse(ring)
    if any(L.is_void for L in Ls):
        raise PreconditionError("the factored table needs every L_k non-void")
    S = compose(K, Ls)
    table = sigma_omega_table(S, ring, family)
    for (s, w), direct in table.entries.items():
        pred = ex312_prediction(K, Ls, s, w, ring)
        if pred != direct:
            from .serialize import complex_to_json
            return Verdict("ex3.12", False, len(table.entries), {
                "K": complex_to_json(K), "Ls": [complex_to_json(L) for L in Ls],
                "sigma": list(S.ground.vertices(s)), "omega": list(S.ground.vertices(w)),
                "direct": direct.to_json(), "predicted": pred.to_json()})
    return Verdict("ex3.12", True, len(table.entries))


def _poly_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in sorted(out.items()) if v}


@dataclass
class BettiPolynomialCheck:
    predicted: dict[int, int]
    direct: dict[int, int]
    verdict: Verdict


def composition_betti_polynomial(K: SimplicialComplex, Ls: Sequence[SimplicialComplex],
                                 ring: RingSpec | str = Q) -> BettiPolynomialCheck:
    """B_S(t) against B_K(t) * prod B_{L_k}(t), with B_X(t) = sum_i b_i(X) t^(i+1)."""
    ring = RingSpec.parse(ring)
    if any(L.n == 0 for L in Ls):
        # the formula needs H(simplex on the block) = 0, false for the empty block
        raise PreconditionError("every L_k needs a nonempty vertex block")
    if ring.tag == "Z":
        for k, L in enumerate(Ls):
            if not simplicial_homology(L, Z).is_free:
                raise PreconditionError(f"H(L_{k + 1}) has torsion; use a field")
    poly = betti_polynomial(K, ring)
    for L in Ls:
        poly = _poly_mul(poly, betti_polynomial(L, ring))
    S = compose(K, Ls)
    direct = betti_polynomial(S, ring)
    ok = poly == direct
    counter = None
    if ring.tag == "Z":
        pred_h = simplicial_homology(K, Z).shift(1)
        for L in Ls:
            pred_h = pred_h.convolve(simplicial_homology(L, Z).shift(1))
        ok = ok and pred_h == simplicial_homology(S, Z).shift(1)
    if not ok:
        from .serialize import complex_to_json
        counter = {"K": complex_to_json(K), "Ls": [complex_to_json(L) for L in Ls]}
    v = Verdict("thm3.10", ok, 1, counter, {"predicted": {str(k): x for k, x in poly.items()},
                                           "direct": {str(k): x for k, x in direct.items()}})
    return BettiPolynomialCheck(poly, direct, v)


@dataclass(frozen=True)
class SphereCheck:
    spherical: bool
    homological_sphere: bool
    bad_face: tuple | None = None

    def to_json(self) -> dict:
        out = {"spherical": self.spherical, "homological_sphere": self.homological_sphere}
        if self.bad_face is not None:
            out["bad_face"] = list(self.bad_face)
        return out


def _spherical_faces(faces: frozenset) -> bool:
    h = faces_homology(faces, Z)
    return h.is_free and h.total() == 1


def sphere_check(L: SimplicialComplex) -> SphereCheck:
    """Homology-spherical over Z ({emptyset} yes, void no), and whether every face link is."""
    spherical = _spherical_faces(L.faces)
    if not spherical:
        return SphereCheck(False, False, () if not L.is_void else None)
    full = L.ground.full
    for f in sorted(L.faces, key=lambda m: (popcount(m), m)):
        if f and not _spherical_faces(restrict_masks(L, f, full ^ f)):
            return SphereCheck(True, False, L.ground.vertices(f))
    return SphereCheck(True, True)


def is_boundary_of_block(L: SimplicialComplex) -> bool:
    return L.faces == frozenset(range(L.ground.full))
