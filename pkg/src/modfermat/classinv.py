"""Imaginary quadratic discriminants, reduced forms, Hilbert class polynomials
and singular moduli.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cache import entry_path, read_entry, write_entry
from .config import Config
from .core import upoly
from .core.mpoly import MPoly
from .errors import InvalidArgument, PrecisionError
from .fp import fp_reduce, fp_resultant

log = logging.getLogger(__name__)


def validate_discriminant(D) -> int:
    if isinstance(D, bool) or not isinstance(D, int):
        raise InvalidArgument(f"discriminant must be an integer, got {D!r}")
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidArgument(f"{D} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)")
    return D


def discriminants(Dbound: int):
    """All negative discriminants with |D| <= Dbound, by increasing |D|."""
    return [-n for n in range(3, Dbound + 1) if (-n) % 4 in (0, 1)]


@dataclass(frozen=True, order=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def root(self):
        """The root (-b + sqrt(D)) / (2a) in the upper half-plane."""
        return mpmath.mpc(-self.b, mpmath.sqrt(-self.discriminant)) / (2 * self.a)

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True


def reduced_forms(D: int):
    """Primitive reduced forms of discriminant D, sorted by (a, |b|, -b)."""
    validate_discriminant(D)
    out = []
    bmax = math.isqrt(-D // 3)
    for b in range(D % 2, bmax + 1, 2):
        m = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    out.append(BQForm(a, b, c))
                    if 0 < b < a < c:
                        out.append(BQForm(a, -b, c))
            a += 1
    out.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return out


def class_number(D: int) -> int:
    return len(reduced_forms(D))


@dataclass(frozen=True)
class ClassPolynomial:
    discriminant: int
    poly: tuple          # integer coefficients, low degree first
    class_number: int

    def __call__(self, x):
        return upoly.evaluate(list(self.poly), x)


def _precision_for(forms) -> int:
    # log2 |j(tau)| is about pi sqrt|D| / a * log2(e) at the root of (a, b, c)
    D = forms[0].discriminant
    bits = sum(math.pi * math.sqrt(-D) / f.a for f in forms) * math.log2(math.e)
    return int(bits) + 32 * len(forms) + 64


def _numeric_class_poly(forms, bits):
    from .uhp import j_numeric

    with mpmath.workprec(bits):
        coeffs = [mpmath.mpc(1)]
        for f in forms:
            r = j_numeric(f.root(), bits)
            nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            coeffs = nxt
        out = []
        worst = mpmath.mpf(0)
        for c in coeffs:
            k = int(mpmath.nint(c.real))
            worst = max(worst, abs(c.real - k), abs(c.imag))
            out.append(k)
    return out, float(worst)


def compute_class_polynomial(D: int) -> ClassPolynomial:
    forms = reduced_forms(D)
    bits = _precision_for(forms)
    for attempt in (bits, 2 * bits):
        coeffs, residual = _numeric_class_poly(forms, attempt)
        if residual < 0.25:
            return ClassPolynomial(D, tuple(coeffs), len(forms))
        log.info("H_%d: rounding residual %.3g at %d bits, retrying", D, residual, attempt)
    raise PrecisionError(f"H_{D}: rounding residual {residual:.3g} at {2 * bits} bits")


_memory: dict = {}


def hilbert_class_polynomial(D: int, config: Config | None = None, use_cache: bool = True) -> ClassPolynomial:
    """H_D from memory, the disk cache ``<cache>/hd/<|D|>.poly``, or computed."""
    config = config or Config()
    validate_discriminant(D)
    if -D > config.hilbert_max_disc:
        raise InvalidArgument(f"|D| = {-D} exceeds hilbert_max_disc = {config.hilbert_max_disc}")
    if D in _memory:
        return _memory[D]
    cp = None
    if use_cache:
        path = entry_path(config.cache_dir, "hd", -D)
        poly = read_entry(path, "HD", -D)
        if poly is not None:
            coeffs = [0] * (poly.degree(0) + 1)
            for (k,), c in poly.items():
                coeffs[k] = c
            cp = ClassPolynomial(D, tuple(coeffs), len(coeffs) - 1)
    if cp is None:
        cp = compute_class_polynomial(D)
        if use_cache:
            try:
                write_entry(path, "HD", -D, MPoly.from_univariate(cp.poly, 0, 1), ("X",))
            except OSError as exc:
                log.warning("could not write cache entry %s: %s", path, exc)
    _memory[D] = cp
    return cp


# --- singular moduli -----------------------------------------------------

@lru_cache(maxsize=None)
def _h1_moduli(Dbound: int):
    out = []
    for D in discriminants(Dbound):
        if class_number(D) == 1:
            # degree one: H_D = X - j, computed at low precision without touching the cache
            cp = compute_class_polynomial(D)
            out.append((D, -cp.poly[0]))
    return tuple(out)


def rational_singular_moduli(Dbound: int):
    """(D, j) for every |D| <= Dbound with h(D) = 1."""
    if Dbound < 3:
        return []
    return list(_h1_moduli(Dbound))


def is_special(x, Dbound: int = 200):
    """The discriminant D with |D| <= Dbound of which x is a singular modulus, or None.

    A rational singular modulus is an algebraic integer of degree h(D) = 1,
    so only integer roots of class-number-one polynomials need checking.
    When several D give the same value the smallest |D| is returned.
    """
    x = Fraction(x)
    if x.denominator != 1:
        return None
    for D, j in _h1_moduli(Dbound):
        if j == x:
            return D
    return None


# --- Kuhne check ------------------------------------------------------------

@dataclass(frozen=True)
class KuhneReport:
    Dbound: int
    discriminants: int
    pairs_checked: int
    violations: tuple     # (D1, D2) with vanishing resultant
    exact_fallbacks: int

    @property
    def ok(self) -> bool:
        return not self.violations


KUHNE_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563)


def kuhne_check(Dbound: int, config: Config | None = None, primes=KUHNE_PRIMES) -> KuhneReport:
    """Res(H_D1(X), H_D2(1 - X)) != 0 for all |D1|, |D2| <= Dbound.

    Nonvanishing modulo a prime certifies nonvanishing over Z; only pairs
    vanishing modulo every listed prime get the exact resultant.
    """
    config = config or Config()
    ds = discriminants(Dbound)
    if config.thread_count > 1:
        with ThreadPoolExecutor(config.thread_count) as ex:
            polys = list(ex.map(lambda D: hilbert_class_polynomial(D, config).poly, ds))
    else:
        polys = [hilbert_class_polynomial(D, config).poly for D in ds]
    flipped = [upoly.compose_affine(list(h), 1, -1) for h in polys]
    red = {p: ([fp_reduce(list(h), p) for h in polys], [fp_reduce(g, p) for g in flipped]) for p in primes}
    violations = []
    fallbacks = 0
    pairs = 0
    for i, D1 in enumerate(ds):
        for k, D2 in enumerate(ds):
            pairs += 1
            if any(fp_resultant(red[p][0][i], red[p][1][k], p) for p in primes):
                continue
            fallbacks += 1
            from .core.resultant import resultant_int

            if resultant_int(list(polys[i]), flipped[k]) == 0:
                violations.append((D1, D2))
    return KuhneReport(Dbound, len(ds), pairs, tuple(violations), fallbacks)
