"""Independent reference computations shared by the module tests and the acceptance gate.

Each one reaches its answer by a route other than the library code it checks.
"""

import cmath
import itertools
import math
from fractions import Fraction
from math import gcd

import gmpy2
import mpmath

from modfermat.core.mpoly import MPoly
from modfermat.modpoly import modular_polynomial


def phi2_by_interpolation():
    # Phi_2(X, j(tau)) = prod over the three 2-isogenous j-values; each X^m coefficient
    # is a cubic in Y = j(tau), fitted from four sample points and rounded
    with mpmath.workprec(400):
        taus = [mpmath.mpc(0.11 * k - 0.2, 1.05 + 0.13 * k) for k in range(4)]

        def j(t):
            return 1728 * mpmath.kleinj(t)

        rows, rhs = [], {m: [] for m in range(3)}
        for t in taus:
            y = j(t)
            roots = [j(2 * t), j(t / 2), j((t + 1) / 2)]
            e1 = sum(roots)
            e2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2]
            e3 = roots[0] * roots[1] * roots[2]
            rows.append([y ** k for k in range(4)])
            rhs[2].append(-e1)
            rhs[1].append(e2)
            rhs[0].append(-e3)
        A = mpmath.matrix(rows)
        terms = {(3, 0): 1}
        for m in range(3):
            sol = mpmath.lu_solve(A, mpmath.matrix(rhs[m]))
            for k in range(4):
                c = sol[k]
                r = int(mpmath.nint(c.real))
                assert abs(c - r) < 1e-6
                if r:
                    terms[(m, k)] = r
    return MPoly(terms, 2)


def analytic_class_number(D):
    """Dirichlet's class number formula with the conductor correction."""
    f = math.isqrt(-D)
    while f > 1 and not (D % (f * f) == 0 and (D // (f * f)) % 4 in (0, 1)):
        f -= 1
    d0 = D // (f * f)
    w = {-3: 6, -4: 4}.get(d0, 2)
    s = sum(int(gmpy2.kronecker(d0, n)) * n for n in range(1, -d0))
    h0 = Fraction(-w * s, 2 * -d0)
    assert h0.denominator == 1
    if f == 1:
        return int(h0)
    h = h0 * f / Fraction(w, 2)
    for p in {p for p in range(2, f + 1) if f % p == 0 and gmpy2.is_prime(p)}:
        h *= 1 - Fraction(int(gmpy2.kronecker(d0, p)), p)
    assert h.denominator == 1
    return int(h)


def small_rationals(H):
    return {Fraction(s * a, b) for a in range(0, H + 1) for b in range(1, H + 1) for s in (1, -1)
            if gcd(a, b) == 1}


def numeric_rational_roots(N, u, cfg):
    # roots of den^psi Phi_N(X, u) have denominator dividing den^psi: round and check exactly
    mp = modular_polynomial(N, cfg)
    f = mp.poly.specialize_to_univariate(1, u)
    scale = u.denominator ** (len(f) - 1) if len(f) > 1 else 1
    with mpmath.workprec(300):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f)], maxsteps=3000, extraprec=900) \
            if len(f) > 2 else [mpmath.mpf(-f[0]) / f[1]]
    out = set()
    for r in roots:
        if abs(mpmath.im(r)) > 1e-20 * max(1, abs(r)):
            continue
        cand = Fraction(int(mpmath.nint(mpmath.re(r) * scale)), scale)
        if mp.evaluate(cand, u) == 0:
            out.add(cand)
    return out


def two_isogenous(t):
    # the rational 2-isogeny family: j = (t + 16)^3 / t and j' = (t + 256)^3 / t^2
    t = Fraction(t)
    return (t + 16) ** 3 / t, (t + 256) ** 3 / t ** 2


FIXTURE = [
    (0, 1728), (2, 2, 3), (0, 54000, 7), (1728, 287496), (2, 3), (5,), (-3375, 8000, 0),
    (4913, 66049), (two_isogenous(2)[0], two_isogenous(2)[1], 11), (1, 1, 1, 1),
    (Fraction(1, 2), Fraction(-1, 2)), (54000, 0, 54000), (287496, 1728, 5), (66049, 4913, 66049),
    (16581375, 8000), (Fraction(5, 7), 10, Fraction(5, 7)), (-32768, 2, -32768), (3, 4, 5, 6),
    (1728, 1728, 2), (two_isogenous(-1)[0], two_isogenous(-1)[1]),
]


def coarsens(small, big):
    # big keeps every relation of small: constants stay constant, classes only merge
    if not set(small.constants) <= set(big.constants):
        return False
    for cls in small.classes:
        rest = [i for i in cls if i not in big.constants]
        if rest and not any(set(rest) <= set(c) for c in big.classes):
            return False
    return True


def has_integer_factor(c, n):
    """X^n - c has a monic integer factor of degree 1..n/2, searched over subsets of its complex roots."""
    if n < 2:
        return False
    r = abs(c) ** (1.0 / n)
    arg = cmath.phase(c) / n
    roots = [cmath.rect(r, arg + 2 * math.pi * k / n) for k in range(n)]
    for d in range(1, n // 2 + 1):
        for sub in itertools.combinations(roots, d):
            s = sum(sub)
            if abs(s.imag) > 1e-7 or abs(s.real - round(s.real)) > 1e-7:
                continue
            coeffs = [1]
            for z in sub:
                coeffs = [a - z * b for a, b in zip(coeffs + [0], [0] + coeffs)]
            if all(abs(a.imag) < 1e-6 and abs(a.real - round(a.real)) < 1e-6 for a in coeffs):
                return True
    return False


def phi_table(n):
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:
            for m in range(p, n + 1, p):
                phi[m] -= phi[m] // p
    return phi
