"""Classical modular polynomials Phi_N(X, Y).

Phi_N(X, j(tau)) = prod (X - j((a tau + b)/d)) over the coset triples
ad = N, 0 <= b < d, gcd(a, b, d) = 1.  The triples sharing (a, d) form a
group whose power sums are integer q-series:

    sum_b j((a tau + b)/d)^r = sum_n c_n(j^r) S_{a,d}(n) q^(a n / d)

with S_{a,d}(n) = sum_{e | gcd(a,d)} mu(e) (d/e) [d/e divides n].  Newton's
identities turn power sums into the group's elementary symmetric series,
the groups are multiplied together as polynomials in X, and each X-power
coefficient is rewritten as a polynomial in j by descending-pole
elimination.  Everything is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cache import entry_path, read_entry, write_entry
from .config import Config
from .core import upoly
from .core.mpoly import MPoly
from .core.qseries import QSeries
from .errors import InvalidArgument, PrecisionError

log = logging.getLogger(__name__)

DEFAULT_GUARD = 16


# --- arithmetic helpers ------------------------------------------------

def prime_factors(n: int):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def psi(N: int) -> int:
    """Index of Gamma_0(N): N * prod_{p | N} (1 + 1/p)."""
    if N < 1:
        raise InvalidArgument("N must be positive")
    r = N
    for p in prime_factors(N):
        r = r // p * (p + 1)
    return r


def coset_triples(N: int):
    """All (a, b, d) with ad = N, 0 <= b < d, gcd(a, b, d) = 1, sorted."""
    if N < 1:
        raise InvalidArgument("N must be positive")
    out = []
    for a in range(N, 0, -1):
        if N % a:
            continue
        d = N // a
        for b in range(d):
            if gcd(gcd(a, b), d) == 1:
                out.append((a, b, d))
    return out


def _mobius(n: int) -> int:
    ps = prime_factors(n)
    m = n
    for p in ps:
        m //= p
        if m % p == 0:
            return 0
    return -1 if len(ps) % 2 else 1


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


# --- the j-function ----------------------------------------------------

def _sigma3_list(L):
    s = [0] * L
    for d in range(1, L):
        d3 = d ** 3
        for m in range(d, L, d):
            s[m] += d3
    return s


def _euler_product(L):
    """Coefficients of prod_{n>=1} (1 - q^n) through q^(L-1), by the pentagonal theorem."""
    out = [0] * L
    k = 0
    while True:
        hit = False
        for kk in ((0,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < L:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


@lru_cache(maxsize=4)
def _j_coeffs(L: int):
    # coefficients of q^-1, q^0, ..., q^(L-2): j = E4^3 / (q prod (1-q^n)^24)
    E4 = [1] + [240 * s for s in _sigma3_list(L)[1:]]
    eta = QSeries(0, _euler_product(L), L)
    eta24 = eta ** 24
    e4 = QSeries(0, E4, L)
    j = (e4 ** 3) * eta24.inverse()
    return tuple(j.coeffs[:L])


def j_q_expansion(order: int) -> QSeries:
    """j(q) = q^-1 + 744 + 196884 q + ... exact through q^(order-1)."""
    if order < 1:
        raise InvalidArgument("order must be >= 1")
    L = order + 1
    # share work between nearby requests
    size = 1 << max(4, (L - 1).bit_length())
    return QSeries(-1, _j_coeffs(size)[:L], order)


# --- Phi_N via the coset groups ----------------------------------------

@dataclass(frozen=True)
class ModularPolynomial:
    level: int
    poly: MPoly  # variables (X, Y)
    psi: int

    def specialize(self, x):
        """Integer coefficients (in U) of den(x)^psi * Phi_N(x, U)."""
        return self.poly.specialize_to_univariate(0, x)

    def evaluate(self, x, y):
        return self.poly.evaluate(x, y)


def _groups(N):
    groups = {}
    for a, b, d in coset_triples(N):
        groups.setdefault((a, d), []).append(b)
    return groups


def _ramanujan_weights(a, d):
    g = gcd(a, d)
    return [(d // e, _mobius(e) * (d // e)) for e in _divisors(g) if _mobius(e)]


def _exact_div_series(s: QSeries, k: int) -> QSeries:
    out = []
    for c in s.coeffs:
        q, r = divmod(c, k)
        if r:
            raise ArithmeticError("Newton identity produced a non-integral coefficient")
        out.append(q)
    return QSeries(s.start, out, s.prec)


def _group_power_sums(groups, T0, maxr):
    """Power sums P_r for each (a, d) group, r = 1..|group|, each to precision T0."""
    need_index = 0
    for (a, d), bs in groups.items():
        need_index = max(need_index, (T0 * d + a - 1) // a)
    jr_prec = need_index + maxr + 2
    j = j_q_expansion(jr_prec)
    weights = {key: _ramanujan_weights(*key) for key in groups}
    sums = {key: [] for key in groups}
    jr = None
    for r in range(1, maxr + 1):
        jr = j if jr is None else jr * j
        for (a, d), bs in groups.items():
            if r > len(bs):
                continue
            w = weights[(a, d)]
            # exponent a n / d ranges over [-r a / d, T0)
            lo = -((r * a) // d)
            coeffs = [0] * (T0 - lo)
            for m in range(lo, T0):
                if (m * d) % a:
                    continue
                n = m * d // a
                if n >= jr.prec:
                    raise PrecisionError("power of j truncated too early")
                c = jr[n]
                if not c:
                    continue
                s = 0
                for step, wt in w:
                    if n % step == 0:
                        s += wt
                coeffs[m - lo] = c * s
            sums[(a, d)].append(QSeries(lo, coeffs, T0))
    return sums


def _elementary_from_power_sums(P):
    """E_0..E_k from power sums P_1..P_k via Newton's identities."""
    prec = min(p.prec for p in P) if P else 1
    E = [QSeries.one(prec)]
    for k in range(1, len(P) + 1):
        acc = None
        for i in range(1, k + 1):
            term = E[k - i] * P[i - 1]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        E.append(_exact_div_series(acc, k))
    return E


def _poly_mul_series(A, B):
    # polynomials in X (index = degree) with QSeries coefficients
    out = [None] * (len(A) + len(B) - 1)
    for i, x in enumerate(A):
        for k, y in enumerate(B):
            t = x * y
            out[i + k] = t if out[i + k] is None else out[i + k] + t
    return out


def _eliminate_poles(s: QSeries, jpows, guard):
    """Write s as a polynomial in j; verifies the q^1..q^guard tail vanishes."""
    pole = max(0, -s.valuation()) if s.valuation() < s.prec else 0
    coeffs = [0] * (pole + 1)
    for k in range(pole, 0, -1):
        a = s[-k]
        if a:
            coeffs[k] = a
            s = s - jpows[k] * a
    coeffs[0] = s[0]
    if s.prec < guard + 1:
        raise PrecisionError(f"only {s.prec - 1} guard terms available")
    tail = [s[e] for e in range(1, guard + 1)]
    if any(tail):
        raise PrecisionError("nonzero residual tail after pole elimination")
    return upoly.trim(coeffs)


def compute_phi(N: int, guard: int = DEFAULT_GUARD) -> ModularPolynomial:
    """Phi_N from scratch (no cache).  Retries once with doubled guard terms."""
    if N < 1:
        raise InvalidArgument("N must be positive")
    try:
        return _compute_phi(N, guard)
    except PrecisionError as exc:
        log.warning("Phi_%d: %s; retrying with %d guard terms", N, exc, 2 * guard)
    try:
        return _compute_phi(N, 2 * guard)
    except PrecisionError as exc:
        raise PrecisionError(f"Phi_{N} failed at {2 * guard} guard terms: {exc}") from exc


def _compute_phi(N, guard):
    groups = _groups(N)
    P = psi(N)
    T = guard + 1
    T0 = T + P + 1
    maxr = max(len(bs) for bs in groups.values())
    sums = _group_power_sums(groups, T0, maxr)
    total = [QSeries.one(T0)]
    for key in sorted(groups):
        E = _elementary_from_power_sums(sums[key])
        h = len(E) - 1
        gpoly = [E[h - m] * (-1 if (h - m) % 2 else 1) for m in range(h + 1)]
        total = _poly_mul_series(total, gpoly)
    # powers of j known to precision T
    j = j_q_expansion(T + P + 1)
    jpows = [None, j]
    for _ in range(2, P + 1):
        jpows.append(jpows[-1] * j)
    terms = {}
    for m, coeff in enumerate(total):
        ypoly = _eliminate_poles(coeff, jpows, guard)
        for k, c in enumerate(ypoly):
            if c:
                terms[(m, k)] = c
    return ModularPolynomial(N, MPoly(terms, 2), P)


# --- cache -------------------------------------------------------------

_memory: dict = {}


def modular_polynomial(N: int, config: Config | None = None, use_cache: bool = True) -> ModularPolynomial:
    """Phi_N, served from memory, then the disk cache, then computed."""
    config = config or Config()
    if N < 1:
        raise InvalidArgument("N must be positive")
    if N > config.phi_max_level:
        raise InvalidArgument(f"level {N} exceeds phi_max_level = {config.phi_max_level}")
    if N == 1:
        return ModularPolynomial(1, MPoly({(1, 0): 1, (0, 1): -1}, 2), 1)
    if N in _memory:
        return _memory[N]
    if use_cache:
        mp = phi_cache(N, config)
    else:
        mp = compute_phi(N)
    _memory[N] = mp
    return mp


def phi_cache(N: int, config: Config | None = None) -> ModularPolynomial:
    """Load Phi_N from ``<cache>/phi/<N>.poly`` if valid, else compute and store it."""
    config = config or Config()
    path = entry_path(config.cache_dir, "phi", N)
    poly = read_entry(path, "PHI", N)
    if poly is not None:
        return ModularPolynomial(N, poly, psi(N))
    mp = compute_phi(N)
    try:
        write_entry(path, "PHI", N, mp.poly, ("X", "Y"))
    except OSError as exc:
        log.warning("could not write cache entry %s: %s", path, exc)
    return mp


def clear_memory_cache():
    _memory.clear()


# --- verification ------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


@dataclass(frozen=True)
class PhiVerification:
    level: int
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def kronecker_congruence_holds(mp: ModularPolynomial) -> bool:
    p = mp.level
    X, Y = MPoly.var(0), MPoly.var(1)
    target = (X ** p - Y) * (X - Y ** p)
    return not (mp.poly - target).reduce_mod(p)


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def verify_phi(N: int, trials: int = 5, tolerance: float = 1e-9, config: Config | None = None,
               seed: int = 0, mp: ModularPolynomial | None = None) -> PhiVerification:
    """Symmetry, monicity, Kronecker congruence and a numeric vanishing check."""
    config = config or Config()
    if mp is None:
        mp = modular_polynomial(N, config)
    poly = mp.poly
    checks = []
    if N >= 2:
        sym = poly == poly.swap()
        checks.append(CheckResult("symmetry", "pass" if sym else "fail"))
    else:
        checks.append(CheckResult("symmetry", "skip", "N = 1"))
    top = [(e, c) for e, c in poly.items() if e[0] == mp.psi]
    monic = poly.degree(0) == mp.psi and top == [((mp.psi, 0), 1)]
    checks.append(CheckResult("monic_in_X", "pass" if monic else "fail", f"deg_X = {poly.degree(0)}"))
    n_cosets = len(coset_triples(N))
    checks.append(CheckResult("degree_equals_psi", "pass" if poly.degree(0) == n_cosets else "fail",
                              f"cosets = {n_cosets}"))
    if is_prime(N):
        ok = kronecker_congruence_holds(mp)
        checks.append(CheckResult("kronecker_congruence", "pass" if ok else "fail", f"mod {N}"))
    else:
        checks.append(CheckResult("kronecker_congruence", "skip", "N not prime"))
    worst = _numeric_residual(mp, trials, config.float_precision_bits, seed)
    checks.append(CheckResult("numeric_vanishing", "pass" if worst < tolerance else "fail",
                              f"max relative residual {worst:.3e} over {trials} points"))
    return PhiVerification(N, tuple(checks))


def _numeric_residual(mp, trials, bits, seed):
    import random

    import mpmath

    from .uhp import j_numeric

    rng = random.Random(seed)
    worst = 0.0
    with mpmath.workprec(bits):
        terms = mp.poly.items()
        for _ in range(trials):
            # random point of the fundamental domain
            while True:
                x = rng.uniform(-0.5, 0.5)
                y = rng.uniform(0.87, 1.6)
                if x * x + y * y >= 1:
                    break
            tau = mpmath.mpc(x, y)
            u = j_numeric(tau, bits)
            v = j_numeric(tau * mp.level, bits)
            total = mpmath.mpc(0)
            scale = mpmath.mpf(0)
            for (i, k), c in terms:
                t = c * u ** i * v ** k
                total += t
                scale += abs(t)
            worst = max(worst, float(abs(total) / scale))
    return worst
