# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Integer row reduction, compiled twin of _rrefpy.

Two layers: a 64-bit fast path with overflow guards, used when every
intermediate value stays below 2^62, and an object path over Python
ints used as fallback.  Pivot rule and normalization match _rrefpy
exactly, so all three implementations are bit-identical.
"""

from libc.stdlib cimport malloc, free

from math import gcd as _pygcd


class _Overflow(Exception):
    pass


cdef long long _LIM = (<long long>1) << 62


cdef inline long long _llabs(long long x):
    return -x if x < 0 else x


cdef long long _llgcd(long long a, long long b):
    a = _llabs(a)
    b = _llabs(b)
    while b:
        a, b = b, a % b
    return a


cdef inline long long _mul_guard(long long a, long long b) except? -9223372036854775807:
    # |a*b| must stay below 2^62 so that a difference of two products fits
    if a == 0 or b == 0:
        return 0
    if _llabs(a) > _LIM // _llabs(b):
        raise _Overflow()
    return a * b


cdef _rref_ll(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *mat = <long long *> malloc(nrows * ncols * sizeof(long long))
    if mat == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, col, best, rank
    cdef long long v, a, b, g, p, best_abs, x
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                mat[i * ncols + j] = row[j]  # OverflowError escapes to caller
        pivots = []
        rank = 0
        for col in range(ncols):
            best = -1
            best_abs = 0
            for i in range(rank, nrows):
                v = mat[i * ncols + col]
                if v != 0:
                    a = -v if v < 0 else v
                    if best < 0 or a < best_abs:
                        best = i
                        best_abs = a
            if best < 0:
                continue
            if best != rank:
                for j in range(ncols):
                    v = mat[rank * ncols + j]
                    mat[rank * ncols + j] = mat[best * ncols + j]
                    mat[best * ncols + j] = v
            g = 0
            for j in range(ncols):
                v = mat[rank * ncols + j]
                if v != 0:
                    g = _llgcd(g, v)
                    if g == 1:
                        break
            if mat[rank * ncols + col] < 0:
                g = -g
            if g != 1:
                for j in range(ncols):
                    mat[rank * ncols + j] //= g
            p = mat[rank * ncols + col]
            for i in range(nrows):
                if i == rank:
                    continue
                v = mat[i * ncols + col]
                if v == 0:
                    continue
                g = _llgcd(p, v)
                a = p // g
                b = v // g
                if a == 1:
                    for j in range(col, ncols):
                        x = mat[i * ncols + j] - _mul_guard(b, mat[rank * ncols + j])
                        mat[i * ncols + j] = x
                else:
                    for j in range(col):
                        mat[i * ncols + j] = _mul_guard(a, mat[i * ncols + j])
                    for j in range(col, ncols):
                        x = _mul_guard(a, mat[i * ncols + j]) - _mul_guard(b, mat[rank * ncols + j])
                        mat[i * ncols + j] = x
                g = 0
                for j in range(ncols):
                    v = mat[i * ncols + j]
                    if v != 0:
                        g = _llgcd(g, v)
                        if g == 1:
                            break
                if g > 1:
                    for j in range(ncols):
                        mat[i * ncols + j] //= g
            pivots.append(col)
            rank += 1
            if rank == nrows:
                break
        basis = []
        for i in range(rank):
            prow = [0] * ncols
            for j in range(ncols):
                prow[j] = mat[i * ncols + j]
            basis.append(prow)
        return basis, pivots
    finally:
        free(mat)


def _content_obj(row, Py_ssize_t ncols):
    cdef Py_ssize_t j
    g = 0
    for j in range(ncols):
        x = row[j]
        if x:
            g = _pygcd(g, x)
            if g == 1:
                return 1
    return g


cdef _rref_obj(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows, i, j, col, best, rank
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivots = []
    rank = 0
    for col in range(ncols):
        best = -1
        best_abs = 0
        for i in range(rank, nrows):
            v = mat[i][col]
            if v:
                a = -v if v < 0 else v
                if best < 0 or a < best_abs:
                    best = i
                    best_abs = a
        if best < 0:
            continue
        mat[rank], mat[best] = mat[best], mat[rank]
        piv = mat[rank]
        g = _content_obj(piv, ncols)
        if piv[col] < 0:
            g = -g
        if g != 1 and g != 0:
            for j in range(ncols):
                piv[j] //= g
        p = piv[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = mat[i]
            v = row[col]
            if not v:
                continue
            g = _pygcd(p, v)
            a = p // g
            b = v // g
            if a == 1:
                for j in range(col, ncols):
                    row[j] -= b * piv[j]
            else:
                for j in range(col):
                    row[j] *= a
                for j in range(col, ncols):
                    row[j] = a * row[j] - b * piv[j]
            g2 = _content_obj(row, ncols)
            if g2 > 1:
                for j in range(ncols):
                    row[j] //= g2
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    basis = mat[:rank]
    for i in range(rank):
        row = basis[i]
        g = _content_obj(row, ncols)
        if row[pivots[i]] < 0:
            g = -g
        if g != 1 and g != 0:
            for j in range(ncols):
                row[j] //= g
    return basis, pivots


def rref(rows, ncols):
    """See ncfourier._accel._rrefpy.rref; same contract, same output."""
    try:
        return _rref_ll(rows, ncols)
    except (_Overflow, OverflowError):
        return _rref_obj(rows, ncols)
