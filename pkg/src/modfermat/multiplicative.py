"""Radicals and abc quality, S-unit Fermat searches, pure equations X^n = c,
and the order bound from n = t * l decompositions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .core.rational import fmt, rationals_of_height, sort_key
from .errors import InvalidArgument


def factorize(n: int):
    """Prime factorization of a positive integer as {p: e}, by trial division."""
    if n < 1:
        raise InvalidArgument("factorize needs n >= 1")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def radical(n: int) -> int:
    if n < 1:
        raise InvalidArgument("radical needs n >= 1")
    return math.prod(factorize(n))


@dataclass(frozen=True)
class AbcTriple:
    a: int
    b: int
    c: int
    radical: int
    quality: float


def abc_quality(a: int, b: int) -> AbcTriple:
    if a < 1 or b < 1:
        raise InvalidArgument("a and b must be positive")
    if math.gcd(a, b) != 1:
        raise InvalidArgument(f"gcd({a}, {b}) != 1")
    c = a + b
    r = radical(a) * radical(b) * radical(c)
    q = math.log(c) / math.log(r) if r > 1 else math.inf
    return AbcTriple(a, b, c, r, q)


# --- S-units ----------------------------------------------------------------

@dataclass(frozen=True)
class SUnitGroup:
    primes: tuple
    includes_minus_one: bool = True

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not gmpy2.is_prime(p):
                raise InvalidArgument(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @property
    def P(self) -> int:
        return math.prod(self.primes)

    def elements(self, exp_max: int):
        """All +-prod p^e with |e| <= exp_max, in canonical order."""
        out = []
        for exps in itertools.product(range(-exp_max, exp_max + 1), repeat=len(self.primes)):
            v = Fraction(1)
            for p, e in zip(self.primes, exps):
                v *= Fraction(p) ** e
            out.extend((v, -v))
        out.sort(key=sort_key)
        return out

    def exponents(self, x: Fraction):
        """Exponent vector of x over the primes, or None if x is not an S-unit."""
        if x == 0:
            return None
        num, den = abs(x.numerator), x.denominator
        exps = []
        for p in self.primes:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            exps.append(e)
        if num != 1 or den != 1:
            return None
        return tuple(exps)


@dataclass(frozen=True)
class FMLSolution:
    s: Fraction
    x: Fraction
    n: int
    t: Fraction
    y: Fraction
    m: int
    cleared: tuple        # coprime integers (A, B, C) with A + B = C
    abc: AbcTriple

    def verify(self) -> bool:
        A, B, C = self.cleared
        return (self.s * self.x ** self.n + self.t * self.y ** self.m == 1
                and A + B == C and math.gcd(math.gcd(A, B), C) == 1)

    def to_line(self) -> str:
        A, B, C = self.cleared
        return (f"fml s={fmt(self.s)} x={fmt(self.x)} n={self.n} t={fmt(self.t)} y={fmt(self.y)} m={self.m}"
                f" cleared={A}+{B}={C} quality={self.abc.quality:.6f}")


def _clear(a: Fraction, b: Fraction):
    """Coprime integers (A, B, C) proportional to (a, b, a + b)."""
    L = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    A, B = int(a * L), int(b * L)
    C = A + B
    g = math.gcd(math.gcd(A, B), C)
    return A // g, B // g, C // g


def _positive_triple(A, B, C):
    # rearrange A + B = C (signs arbitrary) as a + b = c with a, b, c > 0
    vals = sorted((abs(A), abs(B), abs(C)))
    return vals[0], vals[1]


def fml_search(G: SUnitGroup, nmin: int, exp_max: int, base_height: int, sunit_exp_max: int):
    """All s x^n + t y^m = 1 with s, t in G, x, y not in {0, 1, -1} of bounded height, nmin <= n, m <= exp_max."""
    if nmin < 1 or exp_max < nmin or base_height < 1 or sunit_exp_max < 0:
        raise InvalidArgument("bounds must be positive with nmin <= exp_max")
    units = G.elements(sunit_exp_max)
    bases = [x for x in rationals_of_height(base_height) if x not in (0, 1, -1)]
    out = []
    for s in units:
        for x in bases:
            for n in range(nmin, exp_max + 1):
                w = 1 - s * x ** n
                if w == 0:
                    continue
                for y in bases:
                    for m in range(nmin, exp_max + 1):
                        t = w / y ** m
                        e = G.exponents(t)
                        if e is None or any(abs(k) > sunit_exp_max for k in e):
                            continue
                        A, B, C = _clear(s * x ** n, t * y ** m)
                        a, b = _positive_triple(A, B, C)
                        out.append(FMLSolution(s, x, n, t, y, m, (A, B, C), abc_quality(a, b)))
    return out


# --- pure equations ---------------------------------------------------------

def _int_root(a: int, p: int):
    """Exact p-th root of an integer, or None."""
    if a < 0:
        if p % 2 == 0:
            return None
        r = _int_root(-a, p)
        return None if r is None else -r
    r, exact = gmpy2.iroot(a, p)
    return int(r) if exact else None


def rational_root(c: Fraction, p: int):
    """r in Q with r^p = c, or None."""
    c = Fraction(c)
    a = _int_root(c.numerator, p)
    if a is None:
        return None
    b = _int_root(c.denominator, p)
    if b is None:
        return None
    return Fraction(a, b)


def _prime_divisors(n):
    return sorted(factorize(n)) if n > 1 else []


def pure_equation_reducible(c, n: int):
    """Whether X^n - c is reducible over Q, with a reason string."""
    c = Fraction(c)
    if c == 0:
        raise InvalidArgument("c must be nonzero")
    if n < 1:
        raise InvalidArgument("n must be positive")
    for p in _prime_divisors(n):
        r = rational_root(c, p)
        if r is not None:
            return True, f"c = ({fmt(r)})^{p} with {p} | {n}"
    if n % 4 == 0:
        r = rational_root(-c / 4, 4)
        if r is not None:
            return True, f"c = -4*({fmt(r)})^4 with 4 | {n}"
    return False, f"c is not a p-th power for any prime p | {n}" + (
        " and not in -4Q^4" if n % 4 == 0 else "")


# --- order bound --------------------------------------------------------------

def euler_phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


@dataclass(frozen=True)
class RismanBound:
    n: int
    h_min: int
    witness: tuple        # (t, l)
    sqrt_n: float


def risman_order_bound(n: int) -> RismanBound:
    """min over n = t*l with t squarefree of max(l, phi(t)); ties go to the smaller t."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    primes = sorted(factorize(n)) if n > 1 else []
    best = None
    for r in range(len(primes) + 1):
        for sub in itertools.combinations(primes, r):
            t = math.prod(sub)
            l = n // t
            phi_t = math.prod(p - 1 for p in sub)
            val = max(l, phi_t)
            if best is None or (val, t) < (best[0], best[1]):
                best = (val, t, l)
    return RismanBound(n, best[0], (best[1], best[2]), math.sqrt(n))
