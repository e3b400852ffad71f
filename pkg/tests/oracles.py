"""Brute-force reference implementations used only by the tests.

Nothing here imports polyjoin. Complexes are sets of frozensets of vertex
labels; homology is computed with Fraction / mod-p elimination and a naive
Smith reduction, straight from the definitions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations, product


def powerset(vs):
    vs = list(vs)
    return [frozenset(c) for c in chain.from_iterable(combinations(vs, r) for r in range(len(vs) + 1))]


def closure(facets) -> set:
    out = set()
    for f in facets:
        out.update(powerset(f))
    return out


def dual(faces, universe) -> set:
    S = frozenset(universe)
    return {S - s for s in powerset(S) if s not in faces}


def restriction(faces, sigma, omega) -> set:
    sigma, omega = frozenset(sigma), frozenset(omega)
    return {t for t in powerset(omega) if sigma | t in faces}


def join(parts) -> set:
    """parts: list of face sets with pairwise disjoint labels."""
    out = set()
    for combo in product(*parts):
        out.add(frozenset().union(*combo))
    return out


def polyjoin(K, m, pairs) -> set:
    """K: faces over labels 0..m-1; pairs[k] = (X faces, A faces) with disjoint labels."""
    out = set()
    for tau in K:
        out |= join([pairs[k][0] if k in tau else pairs[k][1] for k in range(m)])
    return out


def pp_points(K, m, XA) -> set:
    out = set()
    for tau in K:
        out.update(product(*[XA[k][0] if k in tau else XA[k][1] for k in range(m)]))
    return out


# -- homology -------------------------------------------------------------------

def _boundary(faces):
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f, key=repr)))
    for d in by_dim:
        by_dim[d].sort(key=repr)
    mats = {}
    for d, cells in by_dim.items():
        lower = {c: i for i, c in enumerate(by_dim.get(d - 1, []))}
        M = [[0] * len(cells) for _ in lower]
        for j, c in enumerate(cells):
            for i in range(len(c)):
                face = c[:i] + c[i + 1:]
                if face in lower:
                    M[lower[face]][j] += (-1) ** i
        mats[d] = M
    return by_dim, mats


def _rank(M, p=0) -> int:
    rows = [list(r) for r in M if any(r)]
    if not rows:
        return 0
    if p:
        rows = [[x % p for x in r] for r in rows]
    else:
        rows = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p) if p else 1 / rows[rank][c]
        rows[rank] = [(x * inv) % p if p else x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p if p else a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def reduced_betti(faces, p=0) -> dict[int, int]:
    """Reduced Betti numbers over Q (p=0) or F_p, keyed by dimension (the empty face is -1)."""
    if not faces:
        return {}
    cells, mats = _boundary(faces)
    out = {}
    for d, cs in cells.items():
        r_out = _rank(mats[d], p) if d - 1 in cells else 0
        r_in = _rank(mats[d + 1], p) if d + 1 in cells else 0
        b = len(cs) - r_out - r_in
        if b:
            out[d] = b
    return out


def unreduced_betti(faces, p=0) -> dict[int, int]:
    faces = {f for f in faces if f}
    if not faces:
        return {}
    b = reduced_betti(faces | {frozenset()}, p)
    b[0] = b.get(0, 0) + 1
    return {d: r for d, r in b.items() if r}


def _smith_divisors(M) -> list[int]:
    """Nonzero invariant factors by textbook pivoting (smallest entry to the corner)."""
    A = [list(r) for r in M]
    out = []
    while A and A[0] and any(any(r) for r in A):
        _, i, j = min((abs(x), i, j) for i, r in enumerate(A) for j, x in enumerate(r) if x)
        A[0], A[i] = A[i], A[0]
        for r in A:
            r[0], r[j] = r[j], r[0]
        while True:
            p = A[0][0]
            for r in A[1:]:
                q = r[0] // p
                for c in range(len(r)):
                    r[c] -= q * A[0][c]
            for c in range(1, len(A[0])):
                q = A[0][c] // p
                for r in A:
                    r[c] -= q * r[0]
            rest = [(abs(A[r][0]), r, 0) for r in range(1, len(A)) if A[r][0]]
            rest += [(abs(A[0][c]), 0, c) for c in range(1, len(A[0])) if A[0][c]]
            if rest:
                _, i, j = min(rest)
                A[0], A[i] = A[i], A[0]
                for r in A:
                    r[0], r[j] = r[j], r[0]
                continue
            bad = next((r for r in range(1, len(A)) if any(x % p for x in A[r][1:])), None)
            if bad is None:
                break
            A[0] = [a + b for a, b in zip(A[0], A[bad])]
        out.append(abs(A[0][0]))
        A = [r[1:] for r in A[1:]]
    return sorted(out)


def integer_homology(faces) -> tuple[dict[int, int], dict[int, list[int]]]:
    """Reduced integral homology: (free ranks, torsion divisors > 1) per dimension."""
    if not faces:
        return {}, {}
    cells, mats = _boundary(faces)
    free, tors = {}, {}
    for d, cs in cells.items():
        r_out = _rank(mats[d]) if d - 1 in cells else 0
        divs = _smith_divisors(mats[d + 1]) if d + 1 in cells and mats[d + 1] else []
        b = len(cs) - r_out - len(divs)
        if b:
            free[d] = b
        t = [x for x in divs if x > 1]
        if t:
            tors[d] = t
    return free, tors
