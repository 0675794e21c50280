# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for truncated series arithmetic over Z/mZ.

Same contracts as ``_kernels_py``; moduli must be < 2**31 so that products
fit comfortably in 64-bit intermediates.
"""

from libc.stdlib cimport calloc, free


cdef inline void _mul_into(long long* a, long long* b, long long* out,
                           Py_ssize_t n, long long mod) noexcept:
    cdef Py_ssize_t i, j
    cdef long long ai
    for i in range(n):
        out[i] = 0
    for i in range(n):
        ai = a[i]
        if ai != 0:
            for j in range(n - i):
                out[i + j] = (out[i + j] + ai * b[j]) % mod


cdef long long* _from_list(obj, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> calloc(n, sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = obj[i]
    return buf


cdef list _to_list(long long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    return [buf[i] for i in range(n)]


def mul_mod(a, b, long long mod):
    """Truncated Cauchy product of equal-length coefficient lists."""
    cdef Py_ssize_t n = len(a)
    cdef long long* ca = _from_list(a, n)
    cdef long long* cb = NULL
    cdef long long* out = NULL
    try:
        cb = _from_list(b, n)
        out = <long long*> calloc(n, sizeof(long long))
        if out == NULL:
            raise MemoryError()
        _mul_into(ca, cb, out, n, mod)
        return _to_list(out, n)
    finally:
        free(ca)
        free(cb)
        free(out)


def compose_mod(outer, inner, long long mod):
    """Horner evaluation of outer(inner(x)); requires inner[0] == 0."""
    cdef Py_ssize_t n = len(outer)
    cdef Py_ssize_t k
    cdef long long* cout = _from_list(outer, n)
    cdef long long* cinn = NULL
    cdef long long* res = NULL
    cdef long long* tmp = NULL
    cdef long long* swap = NULL
    try:
        cinn = _from_list(inner, n)
        res = <long long*> calloc(n, sizeof(long long))
        tmp = <long long*> calloc(n, sizeof(long long))
        if res == NULL or tmp == NULL:
            raise MemoryError()
        res[0] = cout[n - 1]
        for k in range(n - 2, -1, -1):
            _mul_into(res, cinn, tmp, n, mod)
            tmp[0] = cout[k] % mod
            swap = res
            res = tmp
            tmp = swap
        return _to_list(res, n)
    finally:
        free(cout)
        free(cinn)
        free(res)
        free(tmp)


def iterate_mod(g, n, long long mod):
    """n-fold self-composition of g (g[0] == 0); n = 0 gives x."""
    size = len(g)
    res = [0] * size
    if size > 1:
        res[1] = 1
    base = list(g)
    k = n
    while k:
        if k & 1:
            res = compose_mod(res, base, mod)
        k >>= 1
        if k:
            base = compose_mod(base, base, mod)
    return res


def pow_table_mod(w, Py_ssize_t top, long long mod):
    """[w^2, w^3, ..., w^top], each truncated to len(w) coefficients."""
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t j
    cdef long long* cw = _from_list(w, n)
    cdef long long* cur = NULL
    cdef long long* nxt = NULL
    cdef long long* swap = NULL
    out = []
    try:
        cur = _from_list(w, n)
        nxt = <long long*> calloc(n, sizeof(long long))
        if nxt == NULL:
            raise MemoryError()
        for j in range(2, top + 1):
            _mul_into(cur, cw, nxt, n, mod)
            out.append(_to_list(nxt, n))
            swap = cur
            cur = nxt
            nxt = swap
        return out
    finally:
        free(cw)
        free(cur)
        free(nxt)
