"""Based chain complexes, their homology, induced maps and products.

Degrees are reduced degrees: the empty face sits in degree -1, a face with
d+1 vertices in degree d. Boundaries are stored as :class:`SparseMatrix`
objects mapping degree d to degree d-1.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .complex import (GroundSet, SimplicialComplex, SimplicialPair, _pair_list, bits, popcount,
                      submasks)
from .errors import InvalidInputError, UnsupportedRingError
from .limits import check_faces, max_faces
from .linalg import (Q, Z, Field, RingSpec, SparseMatrix, Span, field_rank, integer_rank_and_torsion,
                     inverse_unimodular, matmul, nullspace, rank, smith_form)


# -- graded ranks --------------------------------------------------------

@dataclass(frozen=True)
class GradedRanks:
    """Rank per degree, plus torsion divisors per degree over Z.

    Zero ranks and empty torsion lists are dropped, so equality is equality
    of graded groups up to isomorphism.
    """

    betti: Mapping[int, int]
    torsion: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        b = {int(d): int(r) for d, r in dict(self.betti).items() if r}
        if any(r < 0 for r in b.values()):
            raise InvalidInputError(f"negative rank in {b}")
        t = {int(d): tuple(sorted(int(x) for x in v)) for d, v in dict(self.torsion).items() if v}
        if any(x <= 1 for v in t.values() for x in v):
            raise InvalidInputError("torsion divisors must exceed 1")
        object.__setattr__(self, "betti", dict(sorted(b.items())))
        object.__setattr__(self, "torsion", dict(sorted(t.items())))

    def __hash__(self) -> int:
        return hash((tuple(self.betti.items()), tuple(self.torsion.items())))

    @classmethod
    def zero(cls) -> GradedRanks:
        return cls({})

    def __getitem__(self, d: int) -> int:
        return self.betti.get(d, 0)

    @property
    def is_zero(self) -> bool:
        return not self.betti and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def degrees(self) -> list[int]:
        return sorted(set(self.betti) | set(self.torsion))

    def shift(self, k: int) -> GradedRanks:
        return GradedRanks({d + k: r for d, r in self.betti.items()},
                           {d + k: v for d, v in self.torsion.items()})

    def __add__(self, other: GradedRanks) -> GradedRanks:
        b = dict(self.betti)
        for d, r in other.betti.items():
            b[d] = b.get(d, 0) + r
        t = {d: list(v) for d, v in self.torsion.items()}
        for d, v in other.torsion.items():
            t.setdefault(d, []).extend(v)
        return GradedRanks(b, t)

    def scale(self, c: int) -> GradedRanks:
        return GradedRanks({d: c * r for d, r in self.betti.items()})

    def convolve(self, other: GradedRanks) -> GradedRanks:
        """Homology of a tensor product of free chain complexes (Kunneth).

        Over a field this is plain rank convolution. Torsion contributes
        Z/s (x) Z/t = Z/gcd in degree a+b and Tor(Z/s, Z/t) = Z/gcd in a+b+1.
        """
        out: dict[int, int] = {}
        tors: dict[int, list[int]] = {}
        for a, r in self.betti.items():
            for b, s in other.betti.items():
                out[a + b] = out.get(a + b, 0) + r * s
        for left, right in ((self, other), (other, self)):
            for a, divs in left.torsion.items():
                for b, s in right.betti.items():
                    tors.setdefault(a + b, []).extend(list(divs) * s)
        for a, ds in self.torsion.items():
            for b, es in other.torsion.items():
                for x in ds:
                    for y in es:
                        g = gcd(x, y)
                        if g > 1:
                            tors.setdefault(a + b, []).append(g)
                            tors.setdefault(a + b + 1, []).append(g)
        return GradedRanks(out, tors)

    def euler(self) -> int:
        return sum((-1) ** (d % 2) * r for d, r in self.betti.items())

    def total(self) -> int:
        return sum(self.betti.values())

    def to_json(self) -> dict:
        return {"betti": {str(d): r for d, r in self.betti.items()},
                "torsion": {str(d): list(v) for d, v in self.torsion.items()}}

    @classmethod
    def from_json(cls, data) -> GradedRanks:
        try:
            return cls({int(d): r for d, r in data["betti"].items()},
                       {int(d): v for d, v in data.get("torsion", {}).items()})
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InvalidInputError(f"bad graded ranks: {e}") from None

    def __repr__(self) -> str:
        if self.torsion:
            return f"GradedRanks({self.betti}, torsion={self.torsion})"
        return f"GradedRanks({self.betti})"


UNIT = GradedRanks({0: 1})


# -- based chain complexes -------------------------------------------------

class BasedChainComplex:
    """Per-degree ordered bases with boundary matrices d_k: C_k -> C_{k-1}."""

    __slots__ = ("bases", "boundaries", "ring", "_index")

    def __init__(self, bases: Mapping[int, Sequence], boundaries: Mapping[int, object] | None = None,
                 ring: RingSpec = Q, check: bool = True):
        self.ring = RingSpec.parse(ring)
        self.bases = {int(d): tuple(b) for d, b in sorted(bases.items()) if len(b)}
        self.boundaries: dict[int, SparseMatrix] = {}
        self._index: dict[int, dict] = {}
        for d, M in (boundaries or {}).items():
            if not isinstance(M, SparseMatrix):
                M = SparseMatrix.from_dense(np.asarray(M, dtype=np.int64).reshape(
                    len(self.bases.get(d - 1, ())), len(self.bases.get(d, ()))))
            if M.shape != (len(self.bases.get(d - 1, ())), len(self.bases.get(d, ()))):
                raise InvalidInputError(f"boundary in degree {d} has shape {M.shape}, bases disagree")
            if M.nrows and M.ncols and any(M.cols):
                self.boundaries[int(d)] = M
        if check:
            self.check_dd()

    @property
    def degrees(self) -> list[int]:
        return list(self.bases)

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def d(self, deg: int) -> SparseMatrix:
        M = self.boundaries.get(deg)
        if M is None:
            return SparseMatrix(self.dim(deg - 1), self.dim(deg))
        return M

    def index(self, d: int) -> dict:
        if d not in self._index:
            self._index[d] = {lab: i for i, lab in enumerate(self.bases.get(d, ()))}
        return self._index[d]

    def check_dd(self) -> None:
        p = self.ring.p
        for d in self.boundaries:
            if d - 1 in self.boundaries:
                if not (self.boundaries[d - 1] @ self.boundaries[d]).is_zero(p):
                    raise InvalidInputError(f"boundary does not square to zero at degree {d}")

    def chain_ranks(self) -> dict[int, int]:
        return {d: len(b) for d, b in self.bases.items()}

    def size(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def shifted(self, k: int) -> BasedChainComplex:
        return BasedChainComplex({d + k: b for d, b in self.bases.items()},
                                 {d + k: M for d, M in self.boundaries.items()}, self.ring, check=False)

    def with_ring(self, ring: RingSpec) -> BasedChainComplex:
        return BasedChainComplex(self.bases, self.boundaries, ring, check=False)

    def subcomplex(self, keep: Mapping[int, Sequence]) -> BasedChainComplex:
        """Span of a subset of basis labels; raises unless it is closed under d."""
        bases, boundaries = {}, {}
        pos: dict[int, list[int]] = {}
        for d, labs in keep.items():
            idx = self.index(d)
            try:
                pos[d] = sorted(idx[lab] for lab in labs)
            except KeyError as e:
                raise InvalidInputError(f"label {e.args[0]!r} is not a basis element in degree {d}") from None
            bases[d] = tuple(self.bases[d][i] for i in pos[d])
        for d, cols in pos.items():
            M = self.boundaries.get(d)
            if M is None:
                continue
            lower = {i: j for j, i in enumerate(pos.get(d - 1, ()))}
            new_cols = []
            for c in cols:
                col = {}
                for i, v in M.cols[c].items():
                    if i not in lower:
                        raise InvalidInputError(
                            f"subcomplex is not closed: d({self.bases[d][c]!r}) leaves the span")
                    col[lower[i]] = v
                new_cols.append(col)
            boundaries[d] = SparseMatrix(len(lower), len(cols), new_cols)
        return BasedChainComplex(bases, boundaries, self.ring, check=False)

    def to_json(self) -> dict:
        out = {"ring": str(self.ring), "degrees": {str(d): [repr(lab) for lab in b] for d, b in self.bases.items()},
               "boundary": {}}
        for d, M in self.boundaries.items():
            out["boundary"][str(d)] = {"shape": list(M.shape),
                                       "entries": [[i, j, v] for j, col in enumerate(M.cols)
                                                   for i, v in sorted(col.items())]}
        return out

    @classmethod
    def from_json(cls, data) -> BasedChainComplex:
        try:
            bases = {int(d): [ast.literal_eval(s) for s in labs] for d, labs in data["degrees"].items()}
            boundaries = {}
            for d, spec in data.get("boundary", {}).items():
                nr, nc = spec["shape"]
                cols: list[dict] = [{} for _ in range(nc)]
                for i, j, v in spec["entries"]:
                    cols[j][i] = v
                boundaries[int(d)] = SparseMatrix(nr, nc, cols)
            return cls(bases, boundaries, RingSpec.parse(data.get("ring", "Z")))
        except (KeyError, TypeError, ValueError, SyntaxError) as e:
            raise InvalidInputError(f"bad chain complex JSON: {e}") from None

    def __eq__(self, other) -> bool:
        return (isinstance(other, BasedChainComplex) and self.ring == other.ring
                and self.bases == other.bases and self.boundaries == other.boundaries)

    def __repr__(self) -> str:
        return f"BasedChainComplex({self.chain_ranks()} over {self.ring})"


# -- simplicial chains -----------------------------------------------------

def _lex(mask: int) -> tuple:
    return tuple(bits(mask))


def _graded_faces(faces, reduced: bool) -> dict[int, list[int]]:
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        if f or reduced:
            by_dim.setdefault(popcount(f) - 1, []).append(f)
    for d in by_dim:
        by_dim[d].sort(key=_lex)
    return dict(sorted(by_dim.items()))


def _boundary_cols(lower: list[int], upper: list[int]) -> list[dict]:
    index = {f: i for i, f in enumerate(lower)}
    cols = []
    for f in upper:
        col = {}
        for j, b in enumerate(bits(f)):
            col[index[f ^ (1 << b)]] = -1 if j & 1 else 1
        cols.append(col)
    return cols


def reduced_chains(K: SimplicialComplex, ring: RingSpec | str = Q, reduced: bool = True) -> BasedChainComplex:
    """Simplicial chains of K with vertex-tuple labels; ``reduced=False`` drops the empty face."""
    ring = RingSpec.parse(ring)
    check_faces(len(K.faces), "chain complex")
    graded = _graded_faces(K.faces, reduced)
    bases = {d: [K.ground.vertices(f) for f in fs] for d, fs in graded.items()}
    boundaries = {}
    for d, fs in graded.items():
        if d - 1 in graded:
            lower = graded[d - 1]
            boundaries[d] = SparseMatrix(len(lower), len(fs), _boundary_cols(lower, fs))
    return BasedChainComplex(bases, boundaries, ring, check=False)


def _ranks_from(dims: Mapping[int, int], mats: Mapping[int, object], ring: RingSpec) -> GradedRanks:
    """Homology ranks from chain dimensions and boundary matrices (keyed by source degree)."""
    r: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for d, M in mats.items():
        if ring.tag == "Z":
            r[d], tors = integer_rank_and_torsion(M)
            if tors:
                torsion[d - 1] = tors
        else:
            r[d] = rank(M, ring)
    betti = {d: n - r.get(d, 0) - r.get(d + 1, 0) for d, n in dims.items()}
    out = GradedRanks(betti, torsion)
    chi = sum((-1) ** (d % 2) * n for d, n in dims.items())
    if chi != out.euler():  # pragma: no cover - would mean a kernel bug
        raise ArithmeticError("Euler characteristic mismatch between chains and homology")
    return out


def homology(C: BasedChainComplex) -> GradedRanks:
    """Field Betti numbers, or free ranks plus torsion divisors over Z."""
    return _ranks_from(C.chain_ranks(), C.boundaries, C.ring)


def _is_cone(faces: frozenset) -> bool:
    """True when some vertex v has f | v in faces for every face f."""
    vertices = 0
    for f in faces:
        vertices |= f
    for b in bits(vertices):
        v = 1 << b
        if all((f | v) in faces for f in faces):
            return True
    return False


@lru_cache(maxsize=1 << 18)
def faces_homology(faces: frozenset, ring: RingSpec = Q, reduced: bool = True) -> GradedRanks:
    """Homology of the complex with the given face masks (cached; hot path of the tables)."""
    if not faces:
        return GradedRanks.zero()
    if faces == {0}:
        return GradedRanks({-1: 1}) if reduced else GradedRanks.zero()
    if _is_cone(faces):
        return GradedRanks.zero() if reduced else UNIT
    graded = _graded_faces(faces, reduced)
    dims = {d: len(fs) for d, fs in graded.items()}
    mats = {}
    for d, fs in graded.items():
        if d - 1 in graded:
            lower = graded[d - 1]
            M = SparseMatrix(len(lower), len(fs), _boundary_cols(lower, fs))
            mats[d] = M if len(lower) * len(fs) > 250_000 else M.dense()
    return _ranks_from(dims, mats, ring)


def simplicial_homology(K: SimplicialComplex, ring: RingSpec | str = Q, reduced: bool = True) -> GradedRanks:
    check_faces(len(K.faces), "complex")
    return faces_homology(K.faces, RingSpec.parse(ring), reduced)


def betti_polynomial(K: SimplicialComplex, ring: RingSpec | str = Q) -> dict[int, int]:
    """Coefficients of B_K(t) = sum_i b_i t^(i+1) (reduced Betti numbers)."""
    return {d + 1: r for d, r in simplicial_homology(K, ring).betti.items()}


# -- homology bases and induced maps over a field ----------------------------

class FieldHomology:
    """Cycle representatives of a homology basis, with a coordinate map.

    Representatives are chosen by scanning kernel vectors in the order of the
    free columns of the reduced echelon form, which follows the basis order of
    the chain complex; the choice is therefore deterministic.
    """

    def __init__(self, C: BasedChainComplex, ring: RingSpec):
        self.C = C
        self.field = Field(ring)
        self.reps: dict[int, list[dict]] = {}
        self._spans: dict[int, Span] = {}
        for d in C.degrees:
            self._build(d)

    def _build(self, d: int) -> None:
        F, C = self.field, self.C
        if d in C.boundaries:
            cycles = nullspace(C.d(d), F)
        else:
            cycles = [{i: F.coerce(1)} for i in range(C.dim(d))]
        span = Span(F)
        upper = C.boundaries.get(d + 1)
        if upper is not None:
            for col in upper.cols:
                vec = {i: F.coerce(v) for i, v in col.items()}
                vec = {i: v for i, v in vec.items() if v}
                if vec:
                    span.add(vec)
        reps = []
        for z in cycles:
            if span.add(z, tag=len(reps)):
                reps.append(z)
        self.reps[d] = reps
        self._spans[d] = span

    def ranks(self) -> GradedRanks:
        return GradedRanks({d: len(r) for d, r in self.reps.items()})

    def coords(self, d: int, vec: dict) -> list:
        """Coordinates of the class of the cycle ``vec`` in degree d."""
        n = len(self.reps.get(d, ()))
        if not n:
            return []
        rem, coords = self._spans[d].reduce({i: self.field.coerce(v) for i, v in vec.items()})
        if rem:
            raise InvalidInputError(f"vector in degree {d} is not a cycle")
        return [coords.get(j, self.field.coerce(0)) for j in range(n)]


@dataclass
class GradedMap:
    """Matrices of a homology map in stored bases: matrices[d] is target x source."""

    ring: RingSpec
    source: GradedRanks
    target: GradedRanks
    matrices: dict[int, list[list]]

    def rank(self, d: int) -> int:
        M = self.matrices.get(d)
        if not M:
            return 0
        return field_rank(M, Field(self.ring))

    def image(self) -> GradedRanks:
        return GradedRanks({d: self.rank(d) for d in self.matrices})

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "source": self.source.to_json(), "target": self.target.to_json(),
                "matrices": {str(d): [[str(x) for x in row] for row in M] for d, M in self.matrices.items()}}


def induced_map_chains(sub: BasedChainComplex, total: BasedChainComplex,
                       embedding: Mapping[int, Sequence[int]], ring: RingSpec) -> GradedMap:
    """Homology map of a based inclusion; ``embedding[d][i]`` is the total index of sub basis i."""
    ring = RingSpec.parse(ring)
    if not ring.is_field:
        raise UnsupportedRingError("induced maps are computed over fields; use split_status for Z")
    hs, ht = FieldHomology(sub, ring), FieldHomology(total, ring)
    mats: dict[int, list[list]] = {}
    for d in sorted(set(hs.reps) | set(ht.reps)):
        src, tgt = hs.reps.get(d, []), ht.reps.get(d, [])
        if not src and not tgt:
            continue
        cols = [ht.coords(d, {embedding[d][i]: v for i, v in z.items()}) for z in src]
        mats[d] = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
    return GradedMap(ring, hs.ranks(), ht.ranks(), mats)


def pair_chains(pair: SimplicialPair, ring: RingSpec, reduced: bool = True):
    """Chains of sub and total plus the label embedding between them."""
    sub = reduced_chains(pair.sub, ring, reduced)
    total = reduced_chains(pair.total, ring, reduced)
    embedding = {d: [total.index(d)[lab] for lab in labs] for d, labs in sub.bases.items()}
    return sub, total, embedding


def induced_map(pair: SimplicialPair, ring: RingSpec | str = Q, reduced: bool = True) -> GradedMap:
    """Matrix of the inclusion-induced map H(sub) -> H(total) per degree (field rings)."""
    ring = RingSpec.parse(ring)
    if not ring.is_field:
        raise UnsupportedRingError("induced maps are computed over fields; use split_status for Z")
    return induced_map_chains(*pair_chains(pair, ring, reduced), ring)


# -- integral homology bases (torsion-free case) ----------------------------

class IntegerHomology:
    """Z-bases of free homology groups via Smith forms with transforms.

    Only meaningful when H_d is torsion-free; ``torsion`` records the divisors
    met so callers can refuse otherwise.
    """

    def __init__(self, C: BasedChainComplex):
        self.C = C
        self.torsion: dict[int, list[int]] = {}
        self._data: dict[int, tuple] = {}
        for d in C.degrees:
            self._build(d)

    def _build(self, d: int) -> None:
        C = self.C
        n = C.dim(d)
        if d in C.boundaries:
            diag, _, V = smith_form(C.d(d).dense())
            r = sum(1 for x in diag if x)
        else:
            V, r = [[int(i == j) for j in range(n)] for i in range(n)], 0
        Vinv = inverse_unimodular(V)
        k = n - r  # kernel basis = columns r.. of V
        # boundaries in kernel coordinates
        up = C.boundaries.get(d + 1)
        if up is not None and k:
            B = matmul(Vinv, up.dense().tolist())[r:]
            diag2, U2, _ = smith_form(B)
            r2 = sum(1 for x in diag2 if x)
            tors = [abs(x) for x in diag2 if abs(x) > 1]
        else:
            U2, r2, tors = [[int(i == j) for j in range(k)] for i in range(k)], 0, []
        if tors:
            self.torsion[d] = tors
        self._data[d] = (Vinv, r, U2, r2)

    def rank(self, d: int) -> int:
        if d not in self._data:
            return 0
        Vinv, r, U2, r2 = self._data[d]
        return len(U2) - r2

    def coords(self, d: int, vec: Mapping[int, int]) -> list[int]:
        if d not in self._data:
            return []
        Vinv, r, U2, r2 = self._data[d]
        n = len(Vinv)
        x = [0] * n
        for i, v in vec.items():
            x[i] = int(v)
        c = [sum(Vinv[i][j] * x[j] for j in range(n)) for i in range(n)]
        if any(c[:r]):
            raise InvalidInputError(f"vector in degree {d} is not a cycle")
        kc = c[r:]
        h = [sum(U2[i][j] * kc[j] for j in range(len(kc))) for i in range(len(U2))]
        return h[r2:]

    def reps(self, d: int) -> list[dict]:
        """Cycle representatives: columns r2.. of U2^-1 pushed through the kernel basis."""
        if d not in self._data:
            return []
        Vinv, r, U2, r2 = self._data[d]
        if not U2:
            return []
        V = inverse_unimodular(Vinv)
        U2inv = inverse_unimodular(U2)
        out = []
        for j in range(r2, len(U2)):
            kc = [U2inv[i][j] for i in range(len(U2))]
            chain = {}
            for row in range(len(V)):
                v = sum(V[row][r + i] * kc[i] for i in range(len(kc)))
                if v:
                    chain[row] = v
            out.append(chain)
        return out


def integer_induced_matrices(sub: BasedChainComplex, total: BasedChainComplex,
                             embedding: Mapping[int, Sequence[int]]):
    """Integer matrices of H(sub) -> H(total) in Smith-form bases, with torsion seen on either side."""
    hs, ht = IntegerHomology(sub), IntegerHomology(total)
    mats = {}
    for d in sorted(set(sub.degrees) | set(total.degrees)):
        src = hs.reps(d) if d in sub.bases else []
        m = ht.rank(d) if d in total.bases else 0
        cols = [ht.coords(d, {embedding[d][i]: v for i, v in z.items()}) for z in src]
        if src or m:
            mats[d] = [[cols[j][i] for j in range(len(src))] for i in range(m)]
    return mats, hs.torsion, ht.torsion


# -- tensor products and suspension -------------------------------------------

def tensor_suspend(complexes: Sequence[BasedChainComplex], shift: int = 0) -> BasedChainComplex:
    """Graded tensor product with Koszul signs, re-graded by +shift.

    Basis labels are tuples of the factor labels; within a degree they are
    ordered lexicographically by factor (degree, index).
    """
    ring = complexes[0].ring if complexes else Q
    if any(c.ring != ring for c in complexes):
        raise InvalidInputError("tensor factors must share a ring")
    size = 1
    for c in complexes:
        size *= c.size()
    check_faces(size, "tensor product")
    gens = [[(d, i) for d in c.degrees for i in range(c.dim(d))] for c in complexes]
    elems: dict[int, list[tuple]] = {}
    for combo in product(*gens):
        deg = sum(d for d, _ in combo)
        elems.setdefault(deg, []).append(combo)
    index = {d: {e: i for i, e in enumerate(es)} for d, es in elems.items()}
    boundaries = {}
    for deg, es in elems.items():
        if deg - 1 not in elems:
            continue
        lower = index[deg - 1]
        cols = []
        for e in es:
            col: dict = {}
            prefix = 0
            for k, (dk, ik) in enumerate(e):
                M = complexes[k].boundaries.get(dk)
                if M is not None:
                    sign = -1 if prefix & 1 else 1
                    for i, v in M.cols[ik].items():
                        tgt = lower[e[:k] + ((dk - 1, i),) + e[k + 1:]]
                        col[tgt] = col.get(tgt, 0) + sign * v
                prefix += dk
            cols.append({i: v for i, v in col.items() if v})
        boundaries[deg + shift] = SparseMatrix(len(lower), len(es), cols)
    bases = {deg + shift: [tuple(complexes[k].bases[dk][ik] for k, (dk, ik) in enumerate(e)) for e in es]
             for deg, es in elems.items()}
    return BasedChainComplex(bases, boundaries, ring, check=False)


def suspend(C: BasedChainComplex, k: int = 1) -> BasedChainComplex:
    return C.shifted(k)


# -- simplicial models of products ---------------------------------------------

def _staircase_paths(lengths: list[int]):
    """Maximal chains in a product of chains [0..l_1-1] x ... as lists of index tuples."""
    m = len(lengths)
    start = (0,) * m

    def rec(point, path):
        moved = False
        for k in range(m):
            if point[k] + 1 < lengths[k]:
                nxt = point[:k] + (point[k] + 1,) + point[k + 1:]
                moved = True
                yield from rec(nxt, path + [nxt])
        if not moved:
            yield path

    yield from rec(start, [start])


def staircase_product(factors: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """Triangulated product: faces are chains of distinct vertex tuples, weakly
    increasing in every coordinate (universe order), with faces as projections."""
    if not factors:
        raise InvalidInputError("staircase_product needs at least one factor")
    sizes = [f.n for f in factors]
    ground = GroundSet(tuple(product(*(f.ground.universe for f in factors))))
    if any(f.is_void for f in factors):
        return SimplicialComplex(ground, [], check=False)
    strides = []
    s = 1
    for n in reversed(sizes):
        strides.append(s)
        s *= n
    strides.reverse()
    cap = max_faces()
    faces: set[int] = {0}
    for combo in product(*(f.facets for f in factors)):
        positions = [list(bits(F)) for F in combo]
        if any(not p for p in positions):
            continue
        for path in _staircase_paths([len(p) for p in positions]):
            top = 0
            for pt in path:
                top |= 1 << sum(positions[k][i] * strides[k] for k, i in enumerate(pt))
            if top not in faces:
                faces.update(submasks(top))
                if len(faces) > cap:
                    check_faces(len(faces), "staircase product")
    return SimplicialComplex(ground, faces, check=False)


def pp_triangulated(K: SimplicialComplex, pairs: Sequence) -> SimplicialComplex:
    """Subcomplex of the staircase product of the X_k realizing Z(K; X, A):
    a face is kept iff {k | its k-th projection is not a face of A_k} is in K."""
    pairs = _pair_list(pairs)
    if len(pairs) != K.n:
        raise InvalidInputError(f"need {K.n} pairs, got {len(pairs)}")
    P = staircase_product([p.total for p in pairs])
    if K.is_void:
        return SimplicialComplex(P.ground, [], check=False)
    m = len(pairs)
    coords = list(product(*(range(p.total.n) for p in pairs)))
    subs = [p.sub.faces for p in pairs]
    keep = []
    for f in P.faces:
        proj = [0] * m
        for b in bits(f):
            c = coords[b]
            for k in range(m):
                proj[k] |= 1 << c[k]
        out = 0
        for k in range(m):
            if proj[k] not in subs[k]:
                out |= 1 << k
        if out in K.faces:
            keep.append(f)
    return SimplicialComplex(P.ground, keep, check=False)


__all__ = [
    "GradedRanks", "BasedChainComplex", "GradedMap", "FieldHomology", "IntegerHomology",
    "reduced_chains", "homology", "faces_homology", "simplicial_homology", "betti_polynomial",
    "induced_map", "induced_map_chains", "integer_induced_matrices", "pair_chains",
    "tensor_suspend", "suspend", "staircase_product", "pp_triangulated", "Z", "Q",
]
