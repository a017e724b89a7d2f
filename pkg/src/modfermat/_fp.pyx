# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled polynomial kernels over F_p (p < 2**31).

Same API and results as ``_fp_py``.  Inputs are Python lists of ints in
[0, p), low degree first, trimmed.  The heavy loops run without the GIL.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64


cdef inline i64 _powmod(i64 b, i64 e, i64 p) nogil:
    cdef i64 r = 1
    b %= p
    if b < 0:
        b += p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef inline i64 _inv(i64 a, i64 p) nogil:
    return _powmod(a, p - 2, p)


cdef i64* _load(list a, Py_ssize_t cap) except NULL:
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    if cap < n:
        cap = n
    cdef i64* buf = <i64*> malloc((cap + 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef list _dump(i64* buf, Py_ssize_t n):
    # n = length; trailing zeros removed
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef Py_ssize_t _trimlen(i64* a, Py_ssize_t n) nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef Py_ssize_t _mul(i64* a, Py_ssize_t na, i64* b, Py_ssize_t nb, i64* out, i64 p) nogil:
    cdef Py_ssize_t i, j
    cdef i64 x
    if na == 0 or nb == 0:
        return 0
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        x = a[i]
        if x == 0:
            continue
        for j in range(nb):
            out[i + j] = (out[i + j] + x * b[j]) % p
    return _trimlen(out, na + nb - 1)


cdef Py_ssize_t _rem(i64* r, Py_ssize_t nr, i64* m, Py_ssize_t nm, i64 p, i64* q) nogil:
    # in-place remainder of r by m (nm >= 1); quotient written to q if q != NULL
    cdef Py_ssize_t k, i, off
    cdef i64 inv, c, t
    cdef Py_ssize_t dm = nm - 1
    if nr <= dm:
        return _trimlen(r, nr)
    inv = _inv(m[dm], p)
    for k in range(nr - 1, dm - 1, -1):
        c = r[k]
        if q != NULL:
            q[k - dm] = 0
        if c == 0:
            continue
        t = c * inv % p
        if q != NULL:
            q[k - dm] = t
        off = k - dm
        for i in range(nm):
            r[off + i] = (r[off + i] - t * m[i]) % p
            if r[off + i] < 0:
                r[off + i] += p
    return _trimlen(r, dm)


cdef Py_ssize_t _mulmod(i64* a, Py_ssize_t na, i64* b, Py_ssize_t nb,
                        i64* m, Py_ssize_t nm, i64* out, i64* scratch, i64 p) nogil:
    cdef Py_ssize_t n = _mul(a, na, b, nb, scratch, p)
    n = _rem(scratch, n, m, nm, p, NULL)
    memcpy(out, scratch, n * sizeof(i64))
    return n


cdef Py_ssize_t _powmod_poly(i64* a, Py_ssize_t na, object e, i64* m, Py_ssize_t nm,
                             i64* out, i64 p) except -1:
    cdef Py_ssize_t cap = max(2 * nm + 2, na + 1)
    cdef i64* base = <i64*> malloc(cap * sizeof(i64))
    cdef i64* scratch = <i64*> malloc(cap * sizeof(i64))
    cdef Py_ssize_t nb, nres, i, L
    cdef bytes bb
    cdef const char* cb
    if base == NULL or scratch == NULL:
        free(base)
        free(scratch)
        raise MemoryError()
    memcpy(scratch, a, na * sizeof(i64))
    nb = _rem(scratch, na, m, nm, p, NULL)
    memcpy(base, scratch, nb * sizeof(i64))
    out[0] = 1
    nres = 1 if nm > 1 else 0
    bb = bin(e)[2:].encode()
    L = len(bb)
    cb = bb
    with nogil:
        # left-to-right binary powering
        for i in range(L):
            nres = _mulmod(out, nres, out, nres, m, nm, out, scratch, p)
            if cb[i] == 49:
                nres = _mulmod(out, nres, base, nb, m, nm, out, scratch, p)
    free(base)
    free(scratch)
    return nres


def fp_reduce(a, p):
    out = [x % p for x in a]
    while out and not out[-1]:
        out.pop()
    return out


def _mul_raw(list a, list b, long long p):
    cdef Py_ssize_t na, nb
    cdef i64* x
    cdef i64* y
    cdef i64* o
    cdef Py_ssize_t n
    if not a or not b:
        return []
    x = _load(a, 0)
    y = _load(b, 0)
    o = <i64*> malloc((len(a) + len(b)) * sizeof(i64))
    na = len(a)
    nb = len(b)
    with nogil:
        n = _mul(x, na, y, nb, o, p)
    res = _dump(o, n)
    free(x); free(y); free(o)
    return res


def _divmod_raw(list a, list m, long long p):
    cdef i64* r
    cdef i64* mm
    cdef i64* q
    cdef Py_ssize_t nq, nr, na, nm
    if not m:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(a) < len(m):
        return [], list(a)
    r = _load(a, 0)
    mm = _load(m, 0)
    nq = len(a) - len(m) + 1
    q = <i64*> malloc((nq + 1) * sizeof(i64))
    na = len(a)
    nm = len(m)
    with nogil:
        nr = _rem(r, na, mm, nm, p, q)
    res = (_dump(q, nq), _dump(r, nr))
    free(r); free(mm); free(q)
    return res


def _rem_raw(list a, list m, long long p):
    cdef i64* r
    cdef i64* mm
    cdef Py_ssize_t nr, na, nm
    if not m:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _load(a, 0)
    mm = _load(m, 0)
    na = len(a)
    nm = len(m)
    with nogil:
        nr = _rem(r, na, mm, nm, p, NULL)
    res = _dump(r, nr)
    free(r); free(mm)
    return res


# Public entry points reduce and trim their inputs; the raw kernels assume both.

def fp_mul(a, b, p):
    return _mul_raw(fp_reduce(a, p), fp_reduce(b, p), p)


def fp_divmod(a, m, p):
    return _divmod_raw(fp_reduce(a, p), fp_reduce(m, p), p)


def fp_rem(a, m, p):
    return _rem_raw(fp_reduce(a, p), fp_reduce(m, p), p)


def fp_powmod(a, e, m, p):
    return _powmod_raw(fp_reduce(a, p), e, fp_reduce(m, p), p)


def fp_gcd(a, b, p):
    return _gcd_raw(fp_reduce(a, p), fp_reduce(b, p), p)


def fp_resultant(a, b, p):
    return _resultant_raw(fp_reduce(a, p), fp_reduce(b, p), p)


def fp_eval(a, x, p):
    return _eval_raw(fp_reduce(a, p), x % p, p)


def fp_mulmod(list a, list b, list m, long long p):
    return fp_rem(fp_mul(a, b, p), m, p)


def _powmod_raw(list a, e, list m, long long p):
    cdef Py_ssize_t nm, n
    cdef i64* x
    cdef i64* mm
    cdef i64* o
    if not m:
        raise ZeroDivisionError("modulus is the zero polynomial")
    nm = len(m)
    x = _load(a, 0)
    mm = _load(m, 0)
    o = <i64*> malloc((2 * nm + 2) * sizeof(i64))
    try:
        if e == 0:
            n = 1 if nm > 1 else 0
            o[0] = 1
        else:
            n = _powmod_poly(x, len(a), e, mm, nm, o, p)
        res = _dump(o, n)
    finally:
        free(x); free(mm); free(o)
    return res


def _gcd_raw(list a, list b, long long p):
    cdef Py_ssize_t cap = max(len(a), len(b)) + 1
    cdef i64* x = _load(a, cap)
    cdef i64* y = _load(b, cap)
    cdef i64* t
    cdef Py_ssize_t na = len(a), nb = len(b), tn
    cdef i64 inv
    cdef Py_ssize_t i
    with nogil:
        while nb > 0:
            na = _rem(x, na, y, nb, p, NULL)
            t = x; x = y; y = t
            tn = na; na = nb; nb = tn
        if na > 0:
            inv = _inv(x[na - 1], p)
            for i in range(na):
                x[i] = x[i] * inv % p
    res = _dump(x, na)
    free(x); free(y)
    return res


def _resultant_raw(list a, list b, long long p):
    cdef Py_ssize_t cap, na, nb, nc
    cdef i64* x
    cdef i64* y
    cdef i64* t
    cdef i64 r = 1
    cdef i64 da, db, dc, lb
    if not a or not b:
        return 0
    cap = max(len(a), len(b)) + 1
    x = _load(a, cap)
    y = _load(b, cap)
    na = len(a)
    nb = len(b)
    with nogil:
        while True:
            da = na - 1
            db = nb - 1
            if db == 0:
                r = r * _powmod(y[0], da, p) % p
                break
            if da == 0:
                r = r * _powmod(x[0], db, p) % p
                break
            lb = y[nb - 1]
            nc = _rem(x, na, y, nb, p, NULL)
            if nc == 0:
                r = 0
                break
            dc = nc - 1
            if (da * db) & 1:
                r = (p - r) % p
            r = r * _powmod(lb, da - dc, p) % p
            t = x; x = y; y = t
            na = nb
            nb = nc
    free(x); free(y)
    return int(r)


def fp_ddf(f, p):
    out = []
    f = fp_reduce(f, p)
    h = fp_rem([0, 1], f, p) if len(f) > 2 else [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        while hx and not hx[-1]:
            hx.pop()
        g = fp_gcd(f, hx, p)
        if len(g) > 1:
            out.append((d, g))
            f = fp_divmod(f, g, p)[0]
            h = fp_rem(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _eval_raw(list a, long long x, long long p):
    cdef i64 acc = 0
    cdef Py_ssize_t i
    cdef i64 xx = x % p
    for i in range(len(a) - 1, -1, -1):
        acc = (acc * xx + <i64> a[i]) % p
    return int(acc)
