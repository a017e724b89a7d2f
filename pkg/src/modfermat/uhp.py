"""Numerics on the upper half-plane: reduction to the fundamental domain,
j and its inverse, and the coset-conjugate matching experiment.

All functions take mpmath complex numbers (or ``UHPoint``) and work at an
explicit binary precision.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import InvalidArgument, PrecisionError, PreconditionError
from .modpoly import coset_triples, j_q_expansion

DEFAULT_BITS = 256


@dataclass(frozen=True)
class UHPoint:
    re: object
    im: object

    def __post_init__(self):
        if not self.im > 0:
            raise InvalidArgument("point must lie in the upper half-plane")

    @property
    def tau(self):
        return mpmath.mpc(self.re, self.im)


@dataclass(frozen=True, order=True)
class CosetRep:
    a: int
    b: int
    d: int

    @property
    def height(self) -> int:
        return max(self.a, self.b, self.d)

    def act(self, tau):
        return (self.a * tau + self.b) / self.d


def _as_tau(tau):
    if isinstance(tau, UHPoint):
        return tau.tau
    return mpmath.mpc(tau)


# --- reduction ---------------------------------------------------------

def reduce_to_F(tau, max_iter: int = 10_000):
    """Map tau into F = {|Re| <= 1/2, |tau| >= 1}.

    Returns (reduced point, gamma) with gamma = ((a, b), (c, d)) in SL2(Z)
    and reduced = (a tau + b) / (c tau + d).
    """
    t = _as_tau(tau)
    if not t.imag > 0:
        raise InvalidArgument("im(tau) must be positive")
    a, b, c, d = 1, 0, 0, 1
    for _ in range(max_iter):
        n = int(mpmath.nint(t.real))
        if n:
            t -= n
            a, b = a - n * c, b - n * d
        if abs(t) < 1:
            t = -1 / t
            a, b, c, d = -c, -d, a, b
        else:
            return t, ((a, b), (c, d))
    raise PrecisionError(f"reduction did not converge in {max_iter} steps")


def apply_matrix(gamma, tau):
    (a, b), (c, d) = gamma
    tau = _as_tau(tau)
    return (a * tau + b) / (c * tau + d)


# --- j -----------------------------------------------------------------

def _log_envelope(n: int, im_tau: float) -> float:
    # log of exp(4 pi sqrt n) |q|^n, an upper bound for |c_n q^n|
    return 4 * math.pi * math.sqrt(n) - 2 * math.pi * im_tau * n


def _terms_needed(im_tau: float, bits: int) -> int:
    """Smallest n_max with the tail past q^n_max below 2^-(bits+8) |1/q|."""
    target = -(bits + 8) * math.log(2) + 2 * math.pi * im_tau
    n = 4
    while _log_envelope(n + 1, im_tau) > target - 1:
        n += 1
    return n


def tail_bound(im_tau: float, n_max: int) -> float:
    """Bound on sum_{n > n_max} |c_n q^n| for im(tau) >= sqrt(3)/2.

    Past n = 4 consecutive envelope terms shrink by a fixed ratio, so the
    tail is dominated by a geometric series.
    """
    n = n_max + 1
    ratio = math.exp(_log_envelope(n + 1, im_tau) - _log_envelope(n, im_tau))
    return math.exp(_log_envelope(n, im_tau)) / (1 - ratio)


def _series_sums(t, bits, derivs=0):
    """sum_n c_n q^n for n >= -1 and optional tau-derivatives, at the reduced point t."""
    n_terms = _terms_needed(float(t.imag), bits)
    coeffs = j_q_expansion(n_terms + 1).coeffs  # q^-1 .. q^(n_terms)
    q = mpmath.exp(2j * mpmath.pi * t)
    s0 = mpmath.mpc(0)
    s1 = mpmath.mpc(0)
    s2 = mpmath.mpc(0)
    for k in range(len(coeffs) - 1, 0, -1):  # exponent n = k - 1 >= 0
        n = k - 1
        c = coeffs[k]
        s0 = s0 * q + c
        if derivs:
            s1 = s1 * q + n * c
            s2 = s2 * q + n * n * c
    qi = 1 / q
    val = s0 + qi
    if not derivs:
        return val
    tpi = 2j * mpmath.pi
    d1 = tpi * (s1 - qi)
    d2 = tpi * tpi * (s2 + qi)
    return val, d1, d2


def j_numeric(tau, precision: int = DEFAULT_BITS):
    """j(tau) from its q-expansion after reduction to F."""
    if precision < 53:
        raise InvalidArgument("precision must be at least 53 bits")
    with mpmath.workprec(precision + 20):
        t, _ = reduce_to_F(tau)
        v = _series_sums(t, precision)
    with mpmath.workprec(precision):
        return +v


def j_with_bound(tau, precision: int = DEFAULT_BITS):
    """(j(tau), absolute bound on the truncation error)."""
    with mpmath.workprec(precision + 20):
        t, _ = reduce_to_F(tau)
        y = float(t.imag)
        v = _series_sums(t, precision)
    with mpmath.workprec(precision):
        return +v, tail_bound(y, _terms_needed(y, precision))


# --- inverse -----------------------------------------------------------


def _jets(tau, bits):
    """j, j' and j'' at tau, computed at the reduced point and pulled back.

    With g = (a, b; c, d) and w = c tau + d: j'(tau) = j'(g tau) / w^2 and
    j''(tau) = j''(g tau) / w^4 - 2 c j'(g tau) / w^3.
    """
    t, ((a, b), (c, d)) = reduce_to_F(tau)
    val, d1, d2 = _series_sums(t, bits, derivs=1)
    w = c * tau + d
    return val, d1 / w ** 2, d2 / w ** 4 - 2 * c * d1 / w ** 3


def j_inverse(x, precision: int = DEFAULT_BITS, tolerance: float | None = None, max_iter: int = 200):
    """A point tau of F with j(tau) = x.

    Starts from q ~ 1/x for large |x| and otherwise from the best point of
    a coarse grid on F, then runs Newton on (j - x) / j', which has simple
    zeros even at the elliptic points i and rho, with backtracking.  The
    iterate is not reduced until the end so the map stays smooth across the
    boundary of F.
    """
    x = mpmath.mpc(x)
    if tolerance is None:
        tolerance = 2.0 ** (-precision / 2)
    wp = precision + 20
    with mpmath.workprec(wp):
        tau = _initial_guess(x)
        scale = max(1, abs(x))
        for _ in range(max_iter):
            val, d1, d2 = _jets(tau, wp)
            f = val - x
            if abs(f) <= scale * mpmath.mpf(2) ** (-precision):
                break
            if d1 == 0:
                # sitting on an elliptic point; step off it
                tau += mpmath.mpc(1e-3, 1e-3)
                continue
            g = f / d1
            gp = 1 - f * d2 / (d1 * d1)
            # the modified step converges fast near multiple zeros; plain Newton
            # always descends for |j - x|, so it backs up the modified one
            tried = []
            if gp != 0:
                tried.append((g / gp, 1))
            tried.append((g, 40))
            moved = False
            for step, halvings in tried:
                lam = mpmath.mpf(1)
                for _ in range(halvings):
                    cand = tau - lam * step
                    if cand.imag > 0 and abs(_series_sums(reduce_to_F(cand)[0], wp) - x) < abs(f):
                        tau = cand
                        moved = True
                        break
                    lam /= 2
                if moved:
                    break
            if not moved:
                break
        tau = reduce_to_F(tau)[0]
        residual = abs(_series_sums(tau, wp) - x) / scale
    if residual > tolerance:
        raise PrecisionError(f"j_inverse did not converge (relative residual {float(residual):.2e})")
    with mpmath.workprec(precision):
        return +tau


def _initial_guess(x):
    if abs(x) > 5000:
        tau = mpmath.log(1 / x) / (2j * mpmath.pi)
        if tau.imag <= 0:
            tau = mpmath.mpc(tau.real, 1)
        return reduce_to_F(tau)[0]
    best, best_err = None, None
    with mpmath.workprec(60):
        for i in range(21):
            # offsets keep the grid off the elliptic points, where j' = 0
            re = -0.5 + i * 0.05 + 0.0071
            for k in range(14):
                im = 0.8 + k * 0.1 + 0.0093
                t = mpmath.mpc(re, im)
                if abs(t) < 1:
                    continue
                err = abs(_series_sums(t, 60) - x)
                if best_err is None or err < best_err:
                    best, best_err = t, err
    return mpmath.mpc(best)


# --- cosets and the counting experiment ---------------------------------

def level_coset_reps(N: int):
    return [CosetRep(a, b, d) for a, b, d in coset_triples(N)]


@dataclass(frozen=True)
class Match:
    coset: CosetRep
    value: object      # j((a tau + b)/d)
    root: object       # matched root of Phi_N(x, U)
    residual: float    # |value - root| / max(1, |root|)


@dataclass(frozen=True)
class CountingReport:
    x: Fraction
    N: int
    precision: int
    tolerance: float
    tau: object
    matches: tuple
    height_histogram: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(m.residual for m in self.matches)


def _match(values, roots, tolerance):
    """Bijective matching, greedy first, optimal assignment if greedy is not good enough."""
    def dist(v, r):
        return float(abs(v - r) / max(1, abs(r)))

    n = len(values)
    free = list(range(n))
    pairs = []
    for i, v in enumerate(values):
        k = min(free, key=lambda idx: dist(v, roots[idx]))
        free.remove(k)
        pairs.append((i, k))
    if max(dist(values[i], roots[k]) for i, k in pairs) <= tolerance:
        return pairs
    from scipy.optimize import linear_sum_assignment

    cost = [[dist(v, r) for r in roots] for v in values]
    rows, cols = linear_sum_assignment(cost)
    return list(zip(rows.tolist(), cols.tolist()))


def counting_experiment(x, N: int, precision: int = DEFAULT_BITS, tolerance: float = 1e-6,
                        config=None, allow_special: bool = False) -> CountingReport:
    """Match j((a tau + b)/d) over the coset triples to the roots of Phi_N(x, U)."""
    from .classinv import is_special
    from .modpoly import modular_polynomial

    x = Fraction(x)
    if not allow_special and is_special(x) is not None:
        raise PreconditionError(f"x = {x} is special")
    mp = modular_polynomial(N, config)
    spec = mp.specialize(x)
    for attempt in (precision, 2 * precision):
        with mpmath.workprec(attempt):
            tau = j_inverse(mpmath.mpf(x.numerator) / x.denominator, attempt)
            reps = level_coset_reps(N)
            values = [j_numeric(r.act(tau), attempt) for r in reps]
            if len(spec) == 2:
                roots = [mpmath.mpc(-mpmath.mpf(spec[0]) / spec[1])]
            else:
                coeffs = [mpmath.mpf(c) for c in reversed(spec)]
                roots = list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * attempt))
            pairs = _match(values, roots, tolerance)
            matches = tuple(
                Match(reps[i], values[i], roots[k], float(abs(values[i] - roots[k]) / max(1, abs(roots[k]))))
                for i, k in pairs
            )
        if max(m.residual for m in matches) < tolerance:
            hist = Counter(m.coset.height for m in matches)
            return CountingReport(x, N, attempt, tolerance, tau, matches, dict(sorted(hist.items())))
    raise PrecisionError(f"coset values do not match the roots within {tolerance}")
