# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels (dense int64).

Mirrors ``_pykernels``. ``int_diagonal`` is exact: it raises OverflowError
as soon as an intermediate value leaves int64, and the caller reruns the
pure-Python big-integer path.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

NAME = "cython"

cdef extern from *:
    bint __builtin_mul_overflow(int64_t a, int64_t b, int64_t* res) nogil
    bint __builtin_sub_overflow(int64_t a, int64_t b, int64_t* res) nogil


cdef inline int64_t _floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


def rank_mod_p(matrix, int64_t p):
    """Rank of an integer matrix over F_p (p < 2**31)."""
    cdef cnp.ndarray[int64_t, ndim=2] a = np.mod(np.asarray(matrix, dtype=np.int64), p)
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, base, e, x
    if nr == 0 or nc == 0:
        return 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, nc):
                x = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = x
        # modular inverse by square-and-multiply (p prime)
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, nc):
            a[r, j] = a[r, j] * inv % p
        for i in range(r + 1, nr):
            f = a[i, c]
            if f != 0:
                for j in range(c, nc):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
                        if a[i, j] < 0:
                            a[i, j] += p
        r += 1
    return r


def int_diagonal(matrix):
    """Nonzero diagonal entries (absolute values) of a unimodular diagonal form."""
    cdef cnp.ndarray[int64_t, ndim=2] a = np.array(matrix, dtype=np.int64, copy=True)
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t top = 0, c, i, j, pi, pj
    cdef int64_t pv, q, t, best
    cdef bint moved
    cdef list diag = []
    if nr == 0 or nc == 0:
        return diag
    # active rows are top..nr-1; finished rows are swapped above top
    for c in range(nc):
        if top == nr:
            break
        pi = -1
        best = 0
        for i in range(top, nr):
            if a[i, c] != 0 and (pi < 0 or abs(a[i, c]) < best):
                pi = i
                best = abs(a[i, c])
                if best == 1:
                    break
        if pi < 0:
            continue
        pj = c
        while True:
            pv = a[pi, pj]
            moved = False
            for i in range(top, nr):
                if i == pi or a[i, pj] == 0:
                    continue
                q = _floordiv(a[i, pj], pv)
                for j in range(c, nc):
                    if a[pi, j] != 0:
                        if __builtin_mul_overflow(q, a[pi, j], &t) or \
                                __builtin_sub_overflow(a[i, j], t, &t):
                            raise OverflowError("int64 overflow in int_diagonal")
                        a[i, j] = t
                if a[i, pj] != 0:
                    pi = i
                    moved = True
                    break
            if moved:
                continue
            for j in range(c, nc):
                if j == pj or a[pi, j] == 0:
                    continue
                q = _floordiv(a[pi, j], pv)
                a[pi, j] = a[pi, j] - q * pv
                if a[pi, j] != 0:
                    pj = j
                    moved = True
                    break
            if moved:
                continue
            break
        diag.append(abs(a[pi, pj]))
        a[pi, pj] = 0
        # the pivot column may sit right of c; move it to c so later
        # columns stay untouched by this step
        if pj != c:
            for i in range(top, nr):
                t = a[i, c]
                a[i, c] = a[i, pj]
                a[i, pj] = t
        if pi != top:
            for j in range(c, nc):
                t = a[top, j]
                a[top, j] = a[pi, j]
                a[pi, j] = t
        top += 1
    return diag
