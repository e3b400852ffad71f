"""Pure-Python elimination kernels.

Same signatures as the compiled ``_kernels`` module. Matrices arrive as 2-D
integer numpy arrays and are converted to sparse dict rows with Python ints,
so nothing here can overflow.
"""

NAME = "python"


def _sparse_rows(matrix, p=0):
    rows = []
    for row in matrix.tolist():
        if p:
            r = {j: v % p for j, v in enumerate(row) if v % p}
        else:
            r = {j: v for j, v in enumerate(row) if v}
        if r:
            rows.append(r)
    return rows


def rank_mod_p(matrix, p):
    """Rank of an integer matrix over F_p."""
    if matrix.size == 0:
        return 0
    return rank_mod_p_rows(_sparse_rows(matrix, p), p)


def rank_mod_p_rows(rows, p):
    """Same as :func:`rank_mod_p` on sparse rows ``{col: value}`` (consumed)."""
    if p == 2:
        return _rank_f2(rows)
    rows = [{j: v % p for j, v in r.items() if v % p} for r in rows]
    rank = 0
    pivots = {}  # column -> normalized pivot row
    for row in rows:
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(row[col], -1, p)
                pivots[col] = {j: v * inv % p for j, v in row.items()}
                rank += 1
                break
            f = row[col]
            for j, v in piv.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


def _rank_f2(rows):
    basis = {}  # leading bit -> row bits
    for row in rows:
        bits = 0
        for j, v in row.items():
            if v & 1:
                bits |= 1 << j
        while bits:
            lead = bits.bit_length() - 1
            other = basis.get(lead)
            if other is None:
                basis[lead] = bits
                break
            bits ^= other
    return len(basis)


def int_diagonal(matrix):
    """Absolute values of the nonzero entries of a diagonal form reached by
    unimodular row and column operations. Not normalized to Smith form."""
    if matrix.size == 0:
        return []
    return int_diagonal_rows(_sparse_rows(matrix))


def int_diagonal_rows(rows):
    """Same as :func:`int_diagonal` on sparse rows ``{col: value}``."""
    rows = {i: dict(r) for i, r in enumerate(rows) if r}
    cols = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag = []

    def set_entry(i, j, v):
        r = rows[i]
        if v:
            r[j] = v
            cols.setdefault(j, set()).add(i)
        elif j in r:
            del r[j]
            cols[j].discard(i)

    while rows:
        # smallest magnitude pivot, unit pivots short-circuit the scan
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            pv = rows[pi][pj]
            moved = False
            # clear the pivot column with row operations
            for i in list(cols.get(pj, ())):
                if i == pi:
                    continue
                q = rows[i][pj] // pv
                for j, v in list(rows[pi].items()):
                    set_entry(i, j, rows[i].get(j, 0) - q * v)
                if rows[i].get(pj):
                    pi, moved = i, True
                    break
            if moved:
                continue
            # clear the pivot row with column operations; the pivot column is
            # now zero outside row pi so only that row changes
            for j, v in list(rows[pi].items()):
                if j == pj:
                    continue
                q = v // pv
                set_entry(pi, j, v - q * pv)
                if rows[pi].get(j):
                    pj, moved = j, True
                    break
            if moved:
                continue
            break
        diag.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)
        del rows[pi]
    return diag
