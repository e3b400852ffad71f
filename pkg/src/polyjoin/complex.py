"""Finite simplicial complexes on explicit ground sets, and the combinatorial
constructions built from them: duals, links, restrictions K_{sigma,omega},
joins, polyhedral joins and composition complexes.

Faces are stored as bitmasks over the positions of the ground set, so a
complex is a frozenset of ints plus its ground. The void complex has no
faces at all; ``{emptyset}`` is the complex whose only face is the mask 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import InvalidInputError
from .verdict import Verdict

Vertex = Hashable


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including ``mask`` and 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def compress(mask: int, keep: int) -> int:
    """Re-index ``mask`` (a subset of ``keep``) onto the positions of ``keep``."""
    out = 0
    i = 0
    for b in bits(keep):
        if mask >> b & 1:
            out |= 1 << i
        i += 1
    return out


def expand(mask: int, keep: int) -> int:
    """Inverse of :func:`compress`."""
    out = 0
    for i, b in enumerate(bits(keep)):
        if mask >> i & 1:
            out |= 1 << b
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def index_pairs(n: int, family: str = "X", nonempty_omega: bool = False) -> Iterator[tuple[int, int]]:
    """Disjoint (sigma, omega) mask pairs on n positions.

    Family ``"X"`` is every disjoint pair, ``"R"`` only those with sigma empty.
    """
    full = (1 << n) - 1
    for omega in range(full + 1):
        if nonempty_omega and not omega:
            continue
        if family == "R":
            yield 0, omega
        else:
            for sigma in submasks(full ^ omega):
                yield sigma, omega


@dataclass(frozen=True)
class GroundSet:
    universe: tuple
    blocks: tuple | None = None
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        universe = tuple(self.universe)
        object.__setattr__(self, "universe", universe)
        index = {v: i for i, v in enumerate(universe)}
        if len(index) != len(universe):
            raise InvalidInputError(f"ground set has repeated vertices: {universe!r}")
        object.__setattr__(self, "_index", index)
        if self.blocks is not None:
            blocks = tuple(tuple(b) for b in self.blocks)
            flat = tuple(v for b in blocks for v in b)
            if flat != universe:
                raise InvalidInputError("blocks must be consecutive segments partitioning the universe")
            object.__setattr__(self, "blocks", blocks)

    @classmethod
    def range(cls, n: int, start: int = 1) -> GroundSet:
        return cls(tuple(range(start, start + n)))

    @classmethod
    def blocked(cls, sizes: Sequence[int], start: int = 1) -> GroundSet:
        blocks, v = [], start
        for s in sizes:
            blocks.append(tuple(range(v, v + s)))
            v += s
        return cls(tuple(x for b in blocks for x in b), tuple(blocks))

    def __len__(self) -> int:
        return len(self.universe)

    @property
    def full(self) -> int:
        return (1 << len(self.universe)) - 1

    def position(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise InvalidInputError(f"vertex {v!r} is not in the ground set") from None

    def mask(self, vertices: Iterable[Vertex]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.position(v)
        return m

    def vertices(self, mask: int) -> tuple:
        return tuple(self.universe[i] for i in bits(mask))

    def block_masks(self) -> list[int]:
        if self.blocks is None:
            raise InvalidInputError("ground set has no block structure")
        out, start = [], 0
        for b in self.blocks:
            out.append(((1 << len(b)) - 1) << start)
            start += len(b)
        return out

    def sub(self, mask: int) -> GroundSet:
        """Ground set on the vertices of ``mask``; blocks are intersected."""
        keep = set(self.vertices(mask))
        blocks = None
        if self.blocks is not None:
            blocks = tuple(tuple(v for v in b if v in keep) for b in self.blocks)
        return GroundSet(self.vertices(mask), blocks)


class SimplicialComplex:
    """Downward-closed family of faces on an explicit ground set."""

    __slots__ = ("ground", "faces", "_facets")

    def __init__(self, ground: GroundSet, faces: Iterable[int], check: bool = True):
        self.ground = ground
        self.faces = frozenset(faces)
        self._facets = None
        if check:
            self._validate()

    def _validate(self) -> None:
        full = self.ground.full
        faces = self.faces
        for f in faces:
            if f & ~full or f < 0:
                raise InvalidInputError("face outside the ground set")
            for b in bits(f):
                if f ^ (1 << b) not in faces:
                    raise InvalidInputError(
                        f"faces are not downward closed: {self.ground.vertices(f)} lacks a boundary face")

    @classmethod
    def from_facets(cls, ground: GroundSet, facets: Iterable[Iterable[Vertex]]) -> SimplicialComplex:
        faces = set()
        for f in facets:
            m = ground.mask(f)
            if m in faces:
                continue
            faces.update(submasks(m))
        return cls(ground, faces, check=False)

    @classmethod
    def from_facet_masks(cls, ground: GroundSet, masks: Iterable[int]) -> SimplicialComplex:
        faces = set()
        for m in masks:
            if m & ~ground.full:
                raise InvalidInputError("facet outside the ground set")
            if m not in faces:
                faces.update(submasks(m))
        return cls(ground, faces, check=False)

    # -- basic queries -------------------------------------------------
    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def facets(self) -> tuple[int, ...]:
        if self._facets is None:
            faces = self.faces
            fs = []
            full = self.ground.full
            for f in faces:
                free = full & ~f
                if not any((f | (1 << b)) in faces for b in bits(free)):
                    fs.append(f)
            self._facets = tuple(sorted(fs, key=lambda m: (popcount(m), m)))
        return self._facets

    def facet_vertices(self) -> list[tuple]:
        return [self.ground.vertices(f) for f in self.facets]

    def face_vertices(self) -> list[tuple]:
        return [self.ground.vertices(f) for f in sorted(self.faces, key=lambda m: (popcount(m), m))]

    def __contains__(self, face: Iterable[Vertex]) -> bool:
        return self.ground.mask(face) in self.faces

    def vertex_mask(self) -> int:
        return sum(1 << b for b in range(self.n) if (1 << b) in self.faces)

    @property
    def dim(self) -> int:
        return max((popcount(f) for f in self.faces), default=-2) - 1

    def f_vector(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            d = popcount(f) - 1
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def __len__(self) -> int:
        return len(self.faces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.ground.universe == other.ground.universe and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.ground.universe, self.faces))

    def _same_ground(self, other: SimplicialComplex) -> None:
        if self.ground.universe != other.ground.universe:
            raise InvalidInputError("complexes live on different ground sets")

    def __or__(self, other: SimplicialComplex) -> SimplicialComplex:
        self._same_ground(other)
        return SimplicialComplex(self.ground, self.faces | other.faces, check=False)

    def __and__(self, other: SimplicialComplex) -> SimplicialComplex:
        self._same_ground(other)
        return SimplicialComplex(self.ground, self.faces & other.faces, check=False)

    def __le__(self, other: SimplicialComplex) -> bool:
        self._same_ground(other)
        return self.faces <= other.faces

    def closure(self) -> SimplicialComplex:
        faces: set[int] = set()
        for f in self.faces:
            if f not in faces:
                faces.update(submasks(f))
        return SimplicialComplex(self.ground, faces, check=False)

    def with_ground(self, ground: GroundSet) -> SimplicialComplex:
        """Same faces, positionally relabeled onto another ground of equal size."""
        if len(ground) != self.n:
            raise InvalidInputError("relabeling needs a ground set of the same size")
        return SimplicialComplex(ground, self.faces, check=False)

    def __repr__(self) -> str:
        if self.is_void:
            body = "void"
        else:
            body = ", ".join("{" + ",".join(map(str, f)) + "}" for f in self.facet_vertices())
        return f"SimplicialComplex([{body}] on {list(self.ground.universe)})"


def _as_ground(ground) -> GroundSet:
    if isinstance(ground, GroundSet):
        return ground
    if isinstance(ground, int):
        return GroundSet.range(ground)
    return GroundSet(tuple(ground))


def build(kind: str, ground, data: Iterable[Iterable[Vertex]] | None = None) -> SimplicialComplex:
    """Construct a complex by kind: ``facets``, ``simplex`` (the full simplex on
    the ground), ``boundary`` (its boundary), ``empty`` ({emptyset}) or ``void``.

    The simplex on the empty set is {emptyset}; its boundary is void.
    """
    ground = _as_ground(ground)
    if kind == "facets":
        return SimplicialComplex.from_facets(ground, data or [])
    if kind == "simplex":
        return SimplicialComplex(ground, range(ground.full + 1), check=False)
    if kind == "boundary":
        return SimplicialComplex(ground, range(ground.full), check=False)
    if kind == "empty":
        return SimplicialComplex(ground, [0], check=False)
    if kind == "void":
        return SimplicialComplex(ground, [], check=False)
    raise InvalidInputError(f"unknown complex kind {kind!r}")


def simplex(ground) -> SimplicialComplex:
    return build("simplex", ground)


def boundary(ground) -> SimplicialComplex:
    return build("boundary", ground)


def dual(K: SimplicialComplex) -> SimplicialComplex:
    """Complements of the non-faces of K, relative to K's ground set."""
    if K.n == 0:
        raise InvalidInputError("the dual needs a nonempty ground set")
    full = K.ground.full
    faces = K.faces
    return SimplicialComplex(K.ground, (full ^ s for s in range(full + 1) if s not in faces), check=False)


@dataclass(frozen=True)
class IndexPair:
    """Disjoint vertex subsets (sigma, omega)."""

    sigma: frozenset
    omega: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sigma", frozenset(self.sigma))
        object.__setattr__(self, "omega", frozenset(self.omega))
        if self.sigma & self.omega:
            raise InvalidInputError("sigma and omega must be disjoint")

    def masks(self, ground: GroundSet) -> tuple[int, int]:
        return ground.mask(self.sigma), ground.mask(self.omega)

    @classmethod
    def from_masks(cls, ground: GroundSet, sigma: int, omega: int) -> IndexPair:
        return cls(frozenset(ground.vertices(sigma)), frozenset(ground.vertices(omega)))

    def complement(self, ground: GroundSet) -> frozenset:
        """The remaining vertices, written sigma-tilde."""
        return frozenset(ground.universe) - self.sigma - self.omega


def restrict_masks(K: SimplicialComplex, sigma: int, omega: int) -> frozenset:
    """Faces of K_{sigma,omega} as masks compressed onto the positions of omega."""
    if sigma not in K.faces:
        return frozenset()
    out = set()
    for f in K.faces:
        if f & sigma == sigma:
            rest = f ^ sigma
            if not rest & ~omega:
                out.add(compress(rest, omega))
    return frozenset(out)


def restrict(K: SimplicialComplex, pair: IndexPair) -> SimplicialComplex:
    """K_{sigma,omega} = {tau subset omega | sigma u tau in K}, on the ground omega."""
    sigma, omega = pair.masks(K.ground)
    if sigma & omega:
        raise InvalidInputError("sigma and omega overlap")
    return SimplicialComplex(K.ground.sub(omega), restrict_masks(K, sigma, omega), check=False)


def link(K: SimplicialComplex, sigma: Iterable[Vertex]) -> SimplicialComplex:
    """link_K(sigma) on the ground universe minus sigma; void when sigma is not a face."""
    s = K.ground.mask(sigma)
    rest = K.ground.full ^ s
    return SimplicialComplex(K.ground.sub(rest), restrict_masks(K, s, rest), check=False)


class SimplicialPair:
    """A complex together with a subcomplex on the same ground set."""

    __slots__ = ("total", "sub")

    def __init__(self, total: SimplicialComplex, sub: SimplicialComplex):
        if total.ground.universe != sub.ground.universe:
            raise InvalidInputError("pair members must share a ground set")
        if not sub.faces <= total.faces:
            raise InvalidInputError("sub is not a subcomplex of total")
        self.total = total
        self.sub = sub

    @property
    def ground(self) -> GroundSet:
        return self.total.ground

    def restrict(self, pair: IndexPair) -> SimplicialPair:
        return SimplicialPair(restrict(self.total, pair), restrict(self.sub, pair))

    def restrict_masks(self, sigma: int, omega: int) -> SimplicialPair:
        g = self.ground.sub(omega)
        return SimplicialPair(SimplicialComplex(g, restrict_masks(self.total, sigma, omega), check=False),
                              SimplicialComplex(g, restrict_masks(self.sub, sigma, omega), check=False))

    def link(self, sigma: Iterable[Vertex]) -> SimplicialPair:
        return SimplicialPair(link(self.total, sigma), link(self.sub, sigma))

    def with_ground(self, ground: GroundSet) -> SimplicialPair:
        return SimplicialPair(self.total.with_ground(ground), self.sub.with_ground(ground))

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialPair) and self.total == other.total and self.sub == other.sub

    def __hash__(self) -> int:
        return hash((self.total, self.sub))

    def __repr__(self) -> str:
        return f"SimplicialPair(total={self.total!r}, sub={self.sub!r})"


def _join_ground(parts: Sequence[SimplicialComplex], ground: GroundSet | None) -> GroundSet:
    if ground is None:
        universes = [p.ground.universe for p in parts]
        flat = [v for u in universes for v in u]
        if len(set(flat)) == len(flat):
            return GroundSet(tuple(flat), tuple(universes))
        return GroundSet.blocked([len(u) for u in universes])
    if ground.blocks is None or len(ground.blocks) != len(parts):
        raise InvalidInputError("ground set blocks do not match the number of parts")
    for b, p in zip(ground.blocks, parts):
        if len(b) != p.n:
            raise InvalidInputError("block size does not match the part's ground set")
    return ground


def _join_faces(face_lists: Sequence[Iterable[int]], sizes: Sequence[int]) -> set[int]:
    shifted = []
    offset = 0
    for faces, size in zip(face_lists, sizes):
        shifted.append([f << offset for f in faces])
        offset += size
    out = set()
    for combo in product(*shifted):
        m = 0
        for f in combo:
            m |= f
        out.add(m)
    return out


def join(parts: Sequence[SimplicialComplex], ground: GroundSet | None = None) -> SimplicialComplex:
    """Y_1 * ... * Y_m on the blocked ground: faces meet block k in a face of Y_k.

    Part k is relabeled positionally onto block k. Without an explicit ground
    the universes are concatenated (or renumbered 1..n when they collide).
    """
    g = _join_ground(parts, ground)
    if any(p.is_void for p in parts):
        return SimplicialComplex(g, [], check=False)
    sizes = [p.n for p in parts]
    return SimplicialComplex(g, _join_faces([p.facets for p in parts], sizes), check=False).closure()


def _pair_list(pairs) -> list[SimplicialPair]:
    out = []
    for p in pairs:
        if isinstance(p, SimplicialPair):
            out.append(p)
        else:
            out.append(SimplicialPair(*p))
    return out


def polyhedral_join(K: SimplicialComplex, pairs: Sequence, ground: GroundSet | None = None) -> SimplicialComplex:
    """S(K; X, A): the union over tau in K of the joins taking X_k on tau and A_k elsewhere."""
    pairs = _pair_list(pairs)
    if len(pairs) != K.n:
        raise InvalidInputError(f"need {K.n} simplicial pairs, one per vertex of K's ground, got {len(pairs)}")
    g = _join_ground([p.total for p in pairs], ground)
    if K.is_void:
        return SimplicialComplex(g, [], check=False)
    sizes = [p.total.n for p in pairs]
    faces: set[int] = set()
    for tau in K.facets:
        chosen = [pairs[k].total if tau >> k & 1 else pairs[k].sub for k in range(K.n)]
        if any(c.is_void for c in chosen):
            continue
        for top in _join_faces([c.facets for c in chosen], sizes):
            if top not in faces:
                faces.update(submasks(top))
    return SimplicialComplex(g, faces, check=False)


def compose(K: SimplicialComplex, Ls: Sequence[SimplicialComplex], ground: GroundSet | None = None) -> SimplicialComplex:
    """Composition complex S(K; L_1, ..., L_m): every pair is (simplex, L_k)."""
    return polyhedral_join(K, [SimplicialPair(simplex(L.ground), L) for L in Ls], ground)


def split_void_factors(K: SimplicialComplex, pairs: Sequence):
    """Factor out the blocks whose A_k is void.

    Returns ``(link_K S, remaining pairs, [X_k for k in S])`` with S the set of
    such k; the polyhedral join is the join of the first two with the X_k.
    """
    pairs = _pair_list(pairs)
    S = 0
    for k, p in enumerate(pairs):
        if p.sub.is_void:
            S |= 1 << k
    reduced = link(K, K.ground.vertices(S))
    rest = [p for k, p in enumerate(pairs) if not S >> k & 1]
    factored = [p.total for k, p in enumerate(pairs) if S >> k & 1]
    return reduced, rest, factored


def _cx(K: SimplicialComplex) -> dict:
    from .serialize import complex_to_json
    return complex_to_json(K)


def verify_identity(identity: str, instance: dict) -> Verdict:
    """Check one of the combinatorial identities as a set equality.

    ``identity`` is one of ``dual-demorgan``, ``thm2.6``, ``thm2.10-restrict``,
    ``thm2.10-link``, ``thm2.12``. When an instance omits the index data
    (``pair``, ``sigma``) every admissible choice is swept.
    """
    if identity == "dual-demorgan":
        K1, K2 = instance["K1"], instance["K2"]
        ok = dual(K1 | K2) == (dual(K1) & dual(K2)) and dual(K1 & K2) == (dual(K1) | dual(K2))
        ok = ok and dual(dual(K1)) == K1 and dual(dual(K2)) == K2
        return Verdict(identity, ok, 1, None if ok else {"K1": _cx(K1), "K2": _cx(K2)})

    if identity == "thm2.6":
        K = instance["K"]
        Kd = dual(K)
        if instance.get("pair") is not None:
            todo = [instance["pair"].masks(K.ground)]
            if not todo[0][1]:
                raise InvalidInputError("the restriction duality needs omega nonempty")
        else:
            todo = list(index_pairs(K.n, nonempty_omega=True))
        full = K.ground.full
        for sigma, omega in todo:
            lhs = dual(SimplicialComplex(K.ground.sub(omega), restrict_masks(K, sigma, omega), check=False))
            tilde = full ^ sigma ^ omega
            rhs = restrict_masks(Kd, tilde, omega)
            if lhs.faces != rhs:
                return Verdict(identity, False, len(todo), {
                    "K": _cx(K), "sigma": list(K.ground.vertices(sigma)), "omega": list(K.ground.vertices(omega))})
        return Verdict(identity, True, len(todo))

    if identity in ("thm2.10-restrict", "thm2.10-link"):
        K, pairs = instance["K"], _pair_list(instance["pairs"])
        S = polyhedral_join(K, pairs)
        g = S.ground
        bm = g.block_masks()
        offsets = [0]
        for p in pairs:
            offsets.append(offsets[-1] + p.total.n)
        if identity == "thm2.10-restrict":
            if instance.get("pair") is not None:
                todo = [instance["pair"].masks(g)]
            else:
                todo = list(index_pairs(S.n))
        else:
            if instance.get("sigma") is not None:
                s = g.mask(instance["sigma"])
                todo = [(s, g.full ^ s)]
            else:
                todo = [(s, g.full ^ s) for s in range(g.full + 1)]
        for sigma, omega in todo:
            lhs = restrict_masks(S, sigma, omega)
            local = []
            for k, p in enumerate(pairs):
                sk = (sigma & bm[k]) >> offsets[k]
                ok_ = (omega & bm[k]) >> offsets[k]
                local.append(p.restrict_masks(sk, ok_))
            rhs = polyhedral_join(K, local, GroundSet.blocked([popcount(omega & b) for b in bm], start=0))
            if lhs != rhs.faces:
                return Verdict(identity, False, len(todo), {
                    "K": _cx(K), "pairs": [[_cx(p.total), _cx(p.sub)] for p in pairs],
                    "sigma": list(g.vertices(sigma)), "omega": list(g.vertices(omega))})
        return Verdict(identity, True, len(todo))

    if identity == "thm2.12":
        K, Ls = instance["K"], list(instance["Ls"])
        lhs = dual(compose(K, Ls))
        rhs = compose(dual(K), [dual(L) for L in Ls])
        ok = lhs.faces == rhs.faces
        return Verdict(identity, ok, 1, None if ok else {"K": _cx(K), "Ls": [_cx(L) for L in Ls]})

    raise InvalidInputError(f"unknown identity {identity!r}")
