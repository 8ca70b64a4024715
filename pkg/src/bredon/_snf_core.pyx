# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on checked 64-bit integers.

Mirrors ``_snf_py.smith``.  Any arithmetic overflow raises ``OverflowError``;
the dispatcher in ``abelian`` then reruns the pure-Python kernel on exact
integers, so results never depend on word size.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int bz_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int bz_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int bz_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int bz_mul(long long a, long long b, long long *r) nogil
    int bz_sub(long long a, long long b, long long *r) nogil
    int bz_add(long long a, long long b, long long *r) nogil


cdef inline long long _abs(long long x) except? -1:
    if x == -9223372036854775807LL - 1:
        raise OverflowError("abs overflow")
    return -x if x < 0 else x


cdef inline long long _floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long _nearest(long long v, long long p) except? -1:
    cdef long long q = _floordiv(v, p)
    cdef long long r = v - q * p
    if 2 * _abs(r) > _abs(p):
        q += 1
    return q


cdef int _axpy(long long *dst, long long *src, long long q, Py_ssize_t lo, Py_ssize_t hi) except -1:
    """dst[j] -= q * src[j] for lo <= j < hi, checked."""
    cdef Py_ssize_t j
    cdef long long prod
    for j in range(lo, hi):
        if src[j] != 0:
            if bz_mul(q, src[j], &prod) or bz_sub(dst[j], prod, &dst[j]):
                raise OverflowError("entry overflow")
    return 0


cdef int _col_axpy(long long *m, Py_ssize_t stride, Py_ssize_t r0, Py_ssize_t r1,
                   Py_ssize_t dstc, Py_ssize_t srcc, long long q) except -1:
    cdef Py_ssize_t i
    cdef long long prod
    for i in range(r0, r1):
        if m[i * stride + srcc] != 0:
            if bz_mul(q, m[i * stride + srcc], &prod) or bz_sub(m[i * stride + dstc], prod, &m[i * stride + dstc]):
                raise OverflowError("entry overflow")
    return 0


cdef void _swap_rows(long long *m, Py_ssize_t stride, Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t c
    cdef long long tmp
    if i == j:
        return
    for c in range(stride):
        tmp = m[i * stride + c]
        m[i * stride + c] = m[j * stride + c]
        m[j * stride + c] = tmp


cdef void _swap_cols(long long *m, Py_ssize_t nr, Py_ssize_t stride, Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t r
    cdef long long tmp
    if i == j:
        return
    for r in range(nr):
        tmp = m[r * stride + i]
        m[r * stride + i] = m[r * stride + j]
        m[r * stride + j] = tmp


cdef long long *_alloc(Py_ssize_t k) except NULL:
    cdef long long *p = <long long *> malloc((k if k > 0 else 1) * sizeof(long long))
    if p == NULL:
        raise MemoryError()
    return p


cdef list _to_rows(long long *m, Py_ssize_t nr, Py_ssize_t nc):
    return [[m[i * nc + j] for j in range(nc)] for i in range(nr)]


def smith(rows, Py_ssize_t ncols, bint want_u=False, bint want_v=False):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, t, bi, bj, bad, lim
    cdef long long x, p, q, best, ax
    cdef bint dirty
    cdef long long *a = _alloc(nrows * ncols)
    cdef long long *u = NULL
    cdef long long *v = NULL
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j]
        if want_u:
            u = _alloc(nrows * nrows)
            for i in range(nrows * nrows):
                u[i] = 0
            for i in range(nrows):
                u[i * nrows + i] = 1
        if want_v:
            v = _alloc(ncols * ncols)
            for i in range(ncols * ncols):
                v[i] = 0
            for i in range(ncols):
                v[i * ncols + i] = 1
        lim = min(nrows, ncols)
        t = 0
        while t < lim:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, nrows):
                for j in range(t, ncols):
                    x = a[i * ncols + j]
                    if x != 0:
                        ax = _abs(x)
                        if bi < 0 or ax < best:
                            best = ax
                            bi = i
                            bj = j
            if bi < 0:
                break
            _swap_rows(a, ncols, t, bi)
            if u != NULL:
                _swap_rows(u, nrows, t, bi)
            _swap_cols(a, nrows, ncols, t, bj)
            if v != NULL:
                _swap_cols(v, ncols, ncols, t, bj)
            while True:
                p = a[t * ncols + t]
                dirty = False
                for i in range(t + 1, nrows):
                    x = a[i * ncols + t]
                    if x != 0:
                        q = _nearest(x, p)
                        if q != 0:
                            _axpy(a + i * ncols, a + t * ncols, q, t, ncols)
                            if u != NULL:
                                _axpy(u + i * nrows, u + t * nrows, q, 0, nrows)
                        if a[i * ncols + t] != 0:
                            dirty = True
                for j in range(t + 1, ncols):
                    x = a[t * ncols + j]
                    if x != 0:
                        q = _nearest(x, p)
                        if q != 0:
                            _col_axpy(a, ncols, t, nrows, j, t, q)
                            if v != NULL:
                                _col_axpy(v, ncols, 0, ncols, j, t, q)
                        if a[t * ncols + j] != 0:
                            dirty = True
                if dirty:
                    best = _abs(p)
                    bi = t
                    bj = t
                    for i in range(t + 1, nrows):
                        x = a[i * ncols + t]
                        if x != 0 and _abs(x) < best:
                            best = _abs(x)
                            bi = i
                            bj = t
                    for j in range(t + 1, ncols):
                        x = a[t * ncols + j]
                        if x != 0 and _abs(x) < best:
                            best = _abs(x)
                            bi = t
                            bj = j
                    _swap_rows(a, ncols, t, bi)
                    if u != NULL:
                        _swap_rows(u, nrows, t, bi)
                    _swap_cols(a, nrows, ncols, t, bj)
                    if v != NULL:
                        _swap_cols(v, ncols, ncols, t, bj)
                    continue
                bad = -1
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if a[i * ncols + j] % p != 0:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad < 0:
                    break
                _axpy(a + t * ncols, a + bad * ncols, -1, t, ncols)
                if u != NULL:
                    _axpy(u + t * nrows, u + bad * nrows, -1, 0, nrows)
            if a[t * ncols + t] < 0:
                _axpy(a + t * ncols, a + t * ncols, 2, t, ncols)
                if u != NULL:
                    _axpy(u + t * nrows, u + t * nrows, 2, 0, nrows)
            t += 1
        out_a = _to_rows(a, nrows, ncols)
        out_u = _to_rows(u, nrows, nrows) if u != NULL else None
        out_v = _to_rows(v, ncols, ncols) if v != NULL else None
        return out_a, out_u, out_v
    finally:
        free(a)
        if u != NULL:
            free(u)
        if v != NULL:
            free(v)
