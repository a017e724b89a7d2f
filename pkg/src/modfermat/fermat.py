"""The system

    Phi_N(x, u) = 0,  Phi_M(y, v) = 0,  u + v = 1

over Q: the curves V_{N,M}, box searches for rational solutions, and
Galois-degree probes of Phi_N(x, U).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .classinv import is_special
from .config import Config
from .core import upoly
from .core.degpattern import DegreePatternReport, degree_pattern_bound
from .core.mpoly import MPoly
from .core.rational import fmt, height, rationals_of_height, sort_key
from .core.resultant import resultant_eliminate
from .core.roots import rational_roots, squarefree_part
from .errors import InvalidArgument, PreconditionError
from .modpoly import modular_polynomial

RECORD_SCHEMA = "modfermat-records/1"


def fermat_curve(N: int, M: int, config: Config | None = None) -> MPoly:
    """V_{N,M}(x, y) = Res_v(Phi_N(x, 1 - v), Phi_M(y, v)), sign-normalized."""
    p = modular_polynomial(N, config).poly.substitute_affine(1, 1, -1)  # (x, v)
    q = modular_polynomial(M, config).poly.swap()                        # (v, y)
    return resultant_eliminate(p, q)


def phi_roots(N: int, u, config: Config | None = None):
    """Rational x with Phi_N(x, u) = 0, as (x, multiplicity) pairs."""
    f = modular_polynomial(N, config).poly.specialize_to_univariate(1, u)
    return rational_roots(f)


def _phi_vanishes(N, a, b, config):
    return modular_polynomial(N, config).poly.evaluate(a, b) == 0


@dataclass(frozen=True)
class SolutionRecord:
    x: Fraction
    y: Fraction
    u: Fraction
    v: Fraction
    N: int
    M: int
    x_special: int | None = None
    y_special: int | None = None
    u_special: int | None = None
    v_special: int | None = None

    @classmethod
    def build(cls, x, y, u, v, N, M, config=None):
        """Verified record: raises InvalidArgument unless (x, y, u, v) solves the system."""
        x, y, u, v = (Fraction(t) for t in (x, y, u, v))
        rec = cls(x, y, u, v, N, M, is_special(x), is_special(y), is_special(u), is_special(v))
        if not rec.verify(config):
            raise InvalidArgument(f"not a solution: {rec.to_line()}")
        return rec

    def verify(self, config=None) -> bool:
        return (self.u + self.v == 1
                and _phi_vanishes(self.N, self.x, self.u, config)
                and _phi_vanishes(self.M, self.y, self.v, config))

    def sort_key(self):
        return (self.N, self.M, height(self.u), sort_key(self.u), sort_key(self.x), sort_key(self.y))

    def fields(self):
        def sp(d):
            return "none" if d is None else str(d)

        return [
            ("N", str(self.N)), ("M", str(self.M)),
            ("x", fmt(self.x)), ("y", fmt(self.y)), ("u", fmt(self.u)), ("v", fmt(self.v)),
            ("x_special", sp(self.x_special)), ("y_special", sp(self.y_special)),
            ("u_special", sp(self.u_special)), ("v_special", sp(self.v_special)),
        ]

    def to_line(self) -> str:
        return "record " + " ".join(f"{k}={v}" for k, v in self.fields())


def search_solutions(Nmax: int, Mmax: int, H: int, config: Config | None = None):
    """Every solution with height(u) <= H, N <= Nmax, M <= Mmax, sorted canonically."""
    if min(Nmax, Mmax, H) < 1:
        raise InvalidArgument("Nmax, Mmax and H must be positive")
    config = config or Config()
    levels = range(1, max(Nmax, Mmax) + 1)
    for L in levels:
        modular_polynomial(L, config)
    roots: dict = {}

    def xs_for(L, w):
        key = (L, w)
        if key not in roots:
            roots[key] = [r for r, _ in phi_roots(L, w, config)]
        return roots[key]

    out = []
    for u in rationals_of_height(H):
        v = 1 - u
        for N in range(1, Nmax + 1):
            xs = xs_for(N, u)
            if not xs:
                continue
            for M in range(1, Mmax + 1):
                for x in xs:
                    for y in xs_for(M, v):
                        out.append(SolutionRecord.build(x, y, u, v, N, M, config))
    out.sort(key=SolutionRecord.sort_key)
    return out


# --- SGH probes -----------------------------------------------------------

def default_probe_primes(count: int = 10, start: int = 1000):
    out = []
    p = start
    while len(out) < count:
        p = int(gmpy2.next_prime(p))
        out.append(p)
    return out


@dataclass(frozen=True)
class SGHProbeResult:
    x: Fraction
    N: int
    has_rational_root: bool
    rational_roots: tuple
    certified_min_degree: int
    najman_threshold: int
    meets_najman: bool
    report: DegreePatternReport = field(repr=False, compare=False, default=None)

    def fields(self):
        return [
            ("x", fmt(self.x)), ("N", str(self.N)),
            ("has_rational_root", str(self.has_rational_root).lower()),
            ("rational_roots", ",".join(fmt(r) for r in self.rational_roots) or "none"),
            ("certified_min_degree", str(self.certified_min_degree)),
            ("najman_threshold", str(self.najman_threshold)),
            ("meets_najman", str(self.meets_najman).lower()),
            ("primes_used", ",".join(map(str, self.report.primes_used))),
        ]


def sgh_probe(x, N: int, primes=None, config: Config | None = None,
              allow_special: bool = False) -> SGHProbeResult:
    """Rational roots and a certified factor-degree lower bound for Phi_N(x, U)."""
    x = Fraction(x)
    if N < 2:
        raise InvalidArgument("sgh_probe needs N >= 2")
    D = is_special(x)
    if D is not None and not allow_special:
        raise PreconditionError(
            f"x = {fmt(x)} is special (D = {D}); the hypothesis needs x, y not special with Phi_N(x,y) = 0")
    f = modular_polynomial(N, config).poly.specialize_to_univariate(0, x)
    roots = tuple(r for r, _ in rational_roots(f))
    g = squarefree_part(f)
    report = degree_pattern_bound(g, primes if primes is not None else default_probe_primes())
    thr = -(-N // 3)
    cert = report.certified_min_degree
    return SGHProbeResult(x, N, bool(roots), roots, cert, thr, cert >= thr, report)


# --- generalized search -------------------------------------------------------

def _last_var_poly(V: MPoly, head):
    """Integer coefficients in the last variable after fixing the others to ``head``."""
    k = V.nvars
    acc: dict = {}
    for e, c in V.items():
        t = Fraction(c)
        for i in range(k - 1):
            if e[i]:
                t *= head[i] ** e[i]
        acc[e[k - 1]] = acc.get(e[k - 1], 0) + t
    if not acc:
        return []
    d = max(acc)
    coeffs = [acc.get(i, Fraction(0)) for i in range(d + 1)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return upoly.trim([int(c * den) for c in coeffs])


@dataclass(frozen=True)
class GenHit:
    point: tuple
    witnesses: tuple     # per coordinate: tuple of (x, N), the trivial (u, 1) included
    level: int           # max over coordinates of the least grid witness level

    def to_line(self) -> str:
        pt = ",".join(fmt(u) for u in self.point)
        ws = ";".join(" ".join(f"({fmt(x)},{n})" for x, n in w) for w in self.witnesses)
        return f"hit level={self.level} u=({pt}) witnesses={ws}"


def generalized_search(V: MPoly, k: int, Nmax: int, H: int, config: Config | None = None):
    """Rational points u with V(u) = 0 whose coordinates are Phi_N-images of height-<=H rationals."""
    if not V:
        raise InvalidArgument("V must be nonzero")
    if V.nvars != k:
        raise InvalidArgument(f"V has {V.nvars} variables, expected {k}")
    if k > 4:
        raise InvalidArgument("k <= 4 at this scale")
    config = config or Config()
    cand: dict = {}
    for N in range(1, Nmax + 1):
        for x in rationals_of_height(H):
            for u, _ in phi_roots(N, x, config):
                cand.setdefault(u, []).append((x, N))
    values = sorted(cand, key=sort_key)
    hits = []
    for head in itertools.product(values, repeat=k - 1):
        f = _last_var_poly(V, head)
        if not f:
            lasts = values
        elif len(f) == 1:
            continue
        else:
            lasts = [r for r, _ in rational_roots(f) if r in cand]
        for last in lasts:
            pt = tuple(head) + (last,)
            wit = []
            for u in pt:
                w = sorted(set(cand[u]) | {(u, 1)}, key=lambda t: (t[1], sort_key(t[0])))
                wit.append(tuple(w))
            level = max(min(n for _, n in cand[u]) for u in pt)
            hits.append(GenHit(pt, tuple(wit), level))
    hits.sort(key=lambda h: (h.level, [sort_key(u) for u in h.point]))
    return hits
