"""Pure-Python polynomial kernels over F_p.

Reference implementation of the functions compiled in ``_fp.pyx``; the two
must agree bit for bit.  Polynomials are lists of ints, low degree first;
inputs are reduced mod p and trimmed, outputs are always reduced and
trimmed.  ``p`` must be an odd prime or 2 and
below 2**31.
"""


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def fp_reduce(a, p):
    return _trim([x % p for x in a])


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def fp_divmod(a, m, p):
    a, m = fp_reduce(a, p), fp_reduce(m, p)
    if not m:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    dm = len(m) - 1
    if len(r) <= dm:
        return [], r
    inv = pow(m[-1], p - 2, p)
    q = [0] * (len(r) - dm)
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k] % p
        if not c:
            continue
        t = c * inv % p
        q[k - dm] = t
        off = k - dm
        for i in range(dm + 1):
            r[off + i] = (r[off + i] - t * m[i]) % p
    return _trim(q), _trim([x % p for x in r[:dm]])


def fp_rem(a, m, p):
    return fp_divmod(a, m, p)[1]


def fp_mulmod(a, b, m, p):
    return fp_rem(fp_mul(a, b, p), m, p)


def fp_powmod(a, e, m, p):
    """a**e mod m for a Python int exponent e >= 0."""
    result = fp_rem([1], m, p)
    base = fp_rem(a, m, p)
    while e:
        if e & 1:
            result = fp_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = fp_mulmod(base, base, m, p)
    return result


def fp_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def fp_gcd(a, b, p):
    """Monic gcd."""
    a, b = fp_reduce(a, p), fp_reduce(b, p)
    while b:
        a, b = b, fp_rem(a, b, p)
    return fp_monic(a, p)


def fp_resultant(a, b, p):
    a, b = fp_reduce(a, p), fp_reduce(b, p)
    if not a or not b:
        return 0
    r = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return r * pow(b[0], da, p) % p
        if da == 0:
            return r * pow(a[0], db, p) % p
        c = fp_rem(a, b, p)
        if not c:
            return 0
        dc = len(c) - 1
        if (da * db) & 1:
            r = -r
        r = r * pow(b[-1], da - dc, p) % p
        a, b = b, c


def fp_ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f.

    Returns a list of (d, g_d) where g_d is the monic product of the
    irreducible factors of degree d, in increasing d.
    """
    out = []
    f = fp_reduce(f, p)
    h = fp_rem([0, 1], f, p) if len(f) > 2 else [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = fp_gcd(f, _trim(hx), p)
        if len(g) > 1:
            out.append((d, g))
            f = fp_divmod(f, g, p)[0]
            h = fp_rem(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def fp_eval(a, x, p):
    x %= p
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc
