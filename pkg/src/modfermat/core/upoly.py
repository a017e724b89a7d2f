"""Dense univariate polynomials over Z.

A polynomial is a list of Python ints, index = degree, with no trailing
zeros; the zero polynomial is ``[]``.  Large products go through Kronecker
substitution so that GMP does the heavy lifting.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from gmpy2 import mpz

# Below this many coefficient products the schoolbook loop wins.
_KRONECKER_CUTOFF = 400


def trim(c):
    """Strip trailing zeros in place and return the list."""
    while c and not c[-1]:
        c.pop()
    return c


def degree(c) -> int:
    return len(c) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return trim(out)


def neg(a):
    return [-x for x in a]


def scale(a, k):
    if not k:
        return []
    return [k * x for x in a]


def _pack(coeffs, kb):
    pos = b"".join((x if x > 0 else 0).to_bytes(kb, "little") for x in coeffs)
    negs = b"".join((-x if x < 0 else 0).to_bytes(kb, "little") for x in coeffs)
    return mpz(int.from_bytes(pos, "little")) - mpz(int.from_bytes(negs, "little"))


def _unpack(v, kb, n):
    sign = 1
    if v < 0:
        v, sign = -v, -1
    data = int(v).to_bytes(kb * n + 1, "little")
    k = 8 * kb
    half, full = 1 << (k - 1), 1 << k
    out = []
    carry = 0
    frm = int.from_bytes
    for i in range(n):
        x = frm(data[i * kb:(i + 1) * kb], "little") + carry
        if x >= half:
            x -= full
            carry = 1
        else:
            carry = 0
        out.append(x if sign > 0 else -x)
    return out


def kronecker_mul(a, b):
    """Exact product of two nonzero integer coefficient lists (untrimmed)."""
    ba = max(abs(x) for x in a).bit_length()
    bb = max(abs(x) for x in b).bit_length()
    # signed slots: |c_k| < 2^(ba+bb) * min(len) and one sign bit
    k = ba + bb + min(len(a), len(b)).bit_length() + 2
    kb = (k + 7) // 8
    n = len(a) + len(b) - 1
    return _unpack(_pack(a, kb) * _pack(b, kb), kb, n)


def schoolbook_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def mul(a, b, n=None):
    """Product of ``a`` and ``b``, optionally truncated to the first ``n`` terms."""
    if n is not None:
        a = a[:n]
        b = b[:n]
    if not a or not b:
        return []
    if len(a) * len(b) <= _KRONECKER_CUTOFF or min(len(a), len(b)) < 4:
        out = schoolbook_mul(a, b)
    else:
        out = kronecker_mul(a, b)
    if n is not None:
        out = out[:n]
    return trim(out)


def power(a, e):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def monomial(k, c=1):
    return [0] * k + [c] if c else []


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def content(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def primitive_part(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def evaluate(a, x):
    """Exact value at an int or Fraction."""
    if isinstance(x, Fraction) and x.denominator != 1:
        num, den = x.numerator, x.denominator
        return Fraction(eval_homogeneous(a, num, den), den ** degree(a)) if a else Fraction(0)
    x = int(x)
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def eval_homogeneous(a, num, den):
    """den^deg(a) * a(num/den), an integer."""
    acc = 0
    dpow = 1
    for c in reversed(a):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def divmod_int(a, b):
    """Division over Q restricted to cases where the quotient is integral.

    Raises ValueError if a coefficient division is inexact.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) <= db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        t, rem = divmod(c, lb)
        if rem:
            raise ValueError("inexact division over Z")
        q[k - db] = t
        off = k - db
        for i, y in enumerate(b):
            r[off + i] -= t * y
    return trim(q), trim(r[:db])


def exact_div(a, b):
    q, r = divmod_int(a, b)
    if r:
        raise ValueError("polynomial is not divisible")
    return q


def pseudo_rem(a, b):
    """lc(b)^(deg a - deg b + 1) * a mod b, computed over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - db
    while r and len(r) - 1 >= db:
        lr = r[-1]
        off = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[off + i] -= lr * y
        trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [f * x for x in r]
    return r


def gcd_z(a, b):
    """Primitive gcd over Z[X] via the primitive PRS (positive leading coefficient)."""
    if not a:
        return primitive_part(b)
    if not b:
        return primitive_part(a)
    a, b = primitive_part(a), primitive_part(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, (primitive_part(r) if r else [])
    return primitive_part(a)


def compose_affine(a, s, t):
    """Coefficients of a(s + t*X) for integers s, t."""
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] += s * out[k + 1]
    p = 1
    for i in range(n):
        out[i] *= p
        p *= t
    return trim(out)


def from_roots(roots):
    out = [1]
    for r in roots:
        out = sub([0] + out, scale(out, r))
    return out


def to_str(a, var="X") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon and abs(c) == 1:
            term = mon
        elif mon:
            term = f"{abs(c)}*{mon}"
        else:
            term = str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        s += f" {sign} {term}"
    return s
