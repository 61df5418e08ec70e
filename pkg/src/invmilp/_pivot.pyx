# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free tableau kernels (same contract as ``_pivot_py``).

Entries below 2^62 in magnitude are combined in 128-bit C arithmetic and
the (exact) quotient is kept in C when it fits back into 64 bits; anything
larger goes through Python integers.
"""

from cpython.long cimport PyLong_AsLongLongAndOverflow, PyLong_FromLongLong

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef long long LIMIT = 1LL << 62


cdef inline bint _fits(object v, long long *out):
    cdef int overflow = 0
    cdef long long x = PyLong_AsLongLongAndOverflow(v, &overflow)
    if overflow or x >= LIMIT or x <= -LIMIT:
        return False
    out[0] = x
    return True


def pivot(list rows, Py_ssize_t r, Py_ssize_t s, object det):
    cdef list prow = <list>rows[r]
    cdef object p = prow[s]
    cdef Py_ssize_t i, j, nrow = len(rows), ncol = len(prow)
    cdef list row, new
    cdef object f, a, b
    cdef long long cp = 0, cd = 0, cf = 0, ca = 0, cb = 0
    cdef i128 q
    cdef bint small = _fits(p, &cp) and _fits(det, &cd)
    cdef bint same = p == det
    for i in range(nrow):
        if i == r:
            continue
        row = <list>rows[i]
        f = row[s]
        if f != 0:
            new = [None] * ncol
            if small and _fits(f, &cf):
                for j in range(ncol):
                    a = row[j]
                    b = prow[j]
                    if _fits(a, &ca) and _fits(b, &cb):
                        q = (<i128>ca * cp - <i128>cf * cb) / cd
                        if -LIMIT < q < LIMIT:
                            new[j] = PyLong_FromLongLong(<long long>q)
                            continue
                    new[j] = (a * p - f * b) // det
            else:
                for j in range(ncol):
                    new[j] = (row[j] * p - f * prow[j]) // det
            new[s] = -f
            rows[i] = new
        elif not same:
            for j in range(ncol):
                row[j] = row[j] * p // det
            row[s] = 0
    prow[s] = det
    if p < 0:
        for i in range(nrow):
            row = <list>rows[i]
            for j in range(ncol):
                row[j] = -row[j]
        return -p
    return p


def ratio_test(list rows, Py_ssize_t m, Py_ssize_t s, list basis):
    cdef Py_ssize_t i, best = -1
    cdef list row
    cdef object a, q, bnum = 0, bden = 0, lhs, rhs
    for i in range(m):
        row = <list>rows[i]
        a = row[s]
        if a > 0:
            q = row[len(row) - 1]
            if best < 0:
                best = i
                bnum = q
                bden = a
                continue
            lhs = q * bden
            rhs = bnum * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                best = i
                bnum = q
                bden = a
    return best
