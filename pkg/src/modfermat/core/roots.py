"""Rational roots of integer polynomials.

Roots are found p-adically: pick a prime where the squarefree part stays
squarefree, find its roots in F_p, Hensel-lift them past the size bound of
a rational root, rationally reconstruct and verify exactly.  Divisor
enumeration of the end coefficients is kept only as a small-input oracle
(``rational_roots_bruteforce``) because the coefficients of specialized
modular polynomials are far too large to factor.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import gmpy2

from ..errors import InvalidArgument
from .. import fp
from . import upoly

_SQFREE_TEST_PRIMES = (1000003, 1000033, 1000037)
_LIFT_PRIME_START = 1 << 20


def squarefree_part(f):
    """Primitive squarefree part of a nonzero integer polynomial."""
    f = upoly.trim(list(f))
    if not f:
        raise InvalidArgument("zero polynomial")
    if len(f) <= 2:
        return upoly.primitive_part(f)
    for p in _SQFREE_TEST_PRIMES:
        if f[-1] % p and fp.is_squarefree_mod(f, p):
            return upoly.primitive_part(f)
    g = upoly.gcd_z(f, upoly.derivative(f))
    if len(g) == 1:
        return upoly.primitive_part(f)
    return upoly.primitive_part(upoly.exact_div(upoly.primitive_part(f), g))


def rational_reconstruct(u, m, num_bound, den_bound):
    """a/b with |a| <= num_bound, 0 < b <= den_bound and a = u*b (mod m), or None.

    Unique when 2 * num_bound * den_bound < m.
    """
    r0, r1 = m, u % m
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0:
        return None
    a, b = r1, t1
    if b < 0:
        a, b = -a, -b
    if b > den_bound or gcd(a, b) != 1:
        return None
    return Fraction(a, b)


def _lift_prime(g):
    p = _LIFT_PRIME_START
    for _ in range(500):
        p = int(gmpy2.next_prime(p))
        if g[-1] % p and fp.is_squarefree_mod(g, p):
            return p
    raise ArithmeticError("no prime keeps the polynomial squarefree")


def _eval_mod(g, x, m):
    acc = 0
    for c in reversed(g):
        acc = (acc * x + c) % m
    return acc


def _roots_squarefree(g):
    """Rational roots of a primitive squarefree g with g(0) != 0."""
    if len(g) == 2:
        return [Fraction(-g[0], g[1])]
    p = _lift_prime(g)
    base = fp.roots_mod(g, p)
    if not base:
        return []
    A, B = abs(g[0]), abs(g[-1])
    target = 2 * A * B + 1
    dg = upoly.derivative(g)
    out = []
    for r in base:
        m = p
        while m < target:
            m2 = m * m
            fr = _eval_mod(g, r, m2)
            dr = _eval_mod(dg, r, m2)
            r = (r - fr * pow(dr, -1, m2)) % m2
            m = m2
        cand = rational_reconstruct(r, m, A, B)
        if cand is not None and upoly.eval_homogeneous(g, cand.numerator, cand.denominator) == 0:
            out.append(cand)
    return out


def multiplicity(f, root) -> int:
    root = Fraction(root)
    lin = [-root.numerator, root.denominator]
    f = list(f)
    k = 0
    while f and upoly.eval_homogeneous(f, root.numerator, root.denominator) == 0:
        f = upoly.exact_div(f, lin)
        k += 1
    return k


def rational_roots(f):
    """All rational roots of a nonzero integer polynomial as sorted (root, multiplicity) pairs."""
    f = upoly.trim(list(f))
    if not f:
        raise InvalidArgument("zero polynomial has every rational as a root")
    out = []
    k = 0
    while f[k] == 0:
        k += 1
    if k:
        out.append((Fraction(0), k))
        f = f[k:]
    if len(f) > 1:
        g = squarefree_part(f)
        for r in _roots_squarefree(g):
            out.append((r, multiplicity(f, r)))
    out.sort()
    return out


def has_rational_root(f) -> bool:
    return bool(rational_roots(f))


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots_bruteforce(f):
    """Rational-root-theorem enumeration; only for small coefficients."""
    f = upoly.trim(list(f))
    if not f:
        raise InvalidArgument("zero polynomial")
    out = []
    k = 0
    while f[k] == 0:
        k += 1
    if k:
        out.append((Fraction(0), k))
        f = f[k:]
    if len(f) > 1:
        seen = set()
        for a in _divisors(f[0]):
            for b in _divisors(f[-1]):
                for s in (a, -a):
                    r = Fraction(s, b)
                    if r in seen:
                        continue
                    seen.add(r)
                    if upoly.eval_homogeneous(f, r.numerator, r.denominator) == 0:
                        out.append((r, multiplicity(f, r)))
    out.sort()
    return out
